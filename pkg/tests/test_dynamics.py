import math

import numpy as np
import pytest

from cohlim.classical_limit import classical_hamiltonian
from cohlim.coherent import CoherentSpec, coherent_vector
from cohlim.dynamics import (
    ClassicalState,
    HalfPlaneBarrierError,
    Trajectory,
    TruncationGuardError,
    classical_evolve,
    correspondence_compare,
    free_particle_analytic,
    quantum_evolve,
)
from cohlim.observables import PhaseObservable, parse_hamiltonian
from cohlim.su11 import (
    FockVector,
    RepParams,
    RepresentationMismatchError,
    hamiltonian_matrix,
)

FREE = parse_hamiltonian("C")


def test_classical_state_requires_positive_w():
    with pytest.raises(ValueError):
        ClassicalState(0.0, 0.0)


def test_trajectory_requires_increasing_times():
    with pytest.raises(ValueError):
        Trajectory("classical", (0.0, 0.0), {}, ())


def test_free_particle_analytic_values():
    # oracle: w = 1 + 0 + 1*t^2 with h0 = 1; at t=2, v = wdot/(2w) = 4/10
    state = free_particle_analytic(ClassicalState(0.0, 1.0), 1.0, 2.0)
    assert state.w == pytest.approx(5.0, abs=1e-14)
    assert state.v == pytest.approx(0.4, abs=1e-14)
    start = ClassicalState(0.3, 2.0, t=1.5)
    assert free_particle_analytic(start, 1.0, 0.0) == start


def test_free_particle_relabelled_radial_motion():
    # oracle: r(t)^2 = r0^2 + 2 r0 p0 t + (p0^2 + (2k)^2/r0^2) t^2 under
    # w = r^2/2, v = p/r
    k, v0, w0 = 0.8, 0.25, 1.7
    r0 = math.sqrt(2.0 * w0)
    p0 = v0 * r0
    for t in (0.3, 1.0, 2.5):
        state = free_particle_analytic(ClassicalState(v0, w0), k, t)
        r_sq = r0**2 + 2.0 * r0 * p0 * t + (p0**2 + (2.0 * k) ** 2 / r0**2) * t**2
        assert 2.0 * state.w == pytest.approx(r_sq, rel=1e-12)


def test_classical_integrator_matches_analytic_free_particle():
    k = 1.0
    h_cl = classical_hamiltonian(FREE, k)
    grid = np.linspace(0.0, 5.0, 41)
    traj = classical_evolve(h_cl, ClassicalState(0.0, 1.0), grid, tol=1e-10, k=k)
    for t, state in zip(traj.times, traj.states):
        exact = free_particle_analytic(ClassicalState(0.0, 1.0), k, t)
        assert abs(state.w - exact.w) < 1e-8
        assert abs(state.v - exact.v) < 1e-8
    idx = np.searchsorted(grid, 1.0)
    assert traj.states[idx].w == pytest.approx(2.0, abs=1e-9)
    assert traj.states[idx].v == pytest.approx(0.5, abs=1e-9)


def test_classical_evolve_records_observables():
    k = 1.0
    traj = classical_evolve(
        classical_hamiltonian(FREE, k),
        ClassicalState(0.0, 1.0),
        np.linspace(0.0, 1.0, 5),
        tol=1e-12,
        k=k,
    )
    # A = w, B = 2vw, C equals the conserved energy for the free Hamiltonian
    assert traj.observables["A"][-1] == pytest.approx(2.0, abs=1e-10)
    assert traj.observables["B"][-1] == pytest.approx(2.0, abs=1e-10)
    assert traj.observables["C"][-1] == pytest.approx(1.0, abs=1e-10)
    assert traj.observables["energy"][0] == pytest.approx(1.0, abs=1e-12)


def test_classical_uniform_drift_for_h_equal_a():
    # oracle: h = w gives vdot = -1, wdot = 0
    h_cl = PhaseObservable({(0, 1): 1.0})
    traj = classical_evolve(h_cl, ClassicalState(0.2, 1.5), [0.0, 1.0, 2.0], tol=1e-12, k=1.0)
    assert traj.states[-1].v == pytest.approx(0.2 - 2.0, abs=1e-10)
    assert traj.states[-1].w == pytest.approx(1.5, abs=1e-12)


def test_classical_energy_conservation_random_quartic():
    rng = np.random.default_rng(5)
    tol = 1e-10
    for _ in range(3):
        coeffs = rng.uniform(0.1, 0.5, size=3)
        h = parse_hamiltonian(f"{coeffs[0]:.3f}*C + {coeffs[1]:.3f}*A^2 + {coeffs[2]:.3f}*B")
        h_cl = classical_hamiltonian(h, 1.0)
        grid = np.linspace(0.0, 5.0, 11)
        traj = classical_evolve(h_cl, ClassicalState(0.1, 1.2), grid, tol=tol, k=1.0)
        energies = np.asarray(traj.observables["energy"])
        assert np.abs(energies - energies[0]).max() <= 10 * tol * 5.0


def test_classical_single_time_grid():
    traj = classical_evolve(
        classical_hamiltonian(FREE, 1.0), ClassicalState(0.1, 1.0), [0.0], tol=1e-10, k=1.0
    )
    assert traj.states == (ClassicalState(0.1, 1.0, 0.0),)


def test_classical_grid_validation():
    h_cl = classical_hamiltonian(FREE, 1.0)
    with pytest.raises(ValueError):
        classical_evolve(h_cl, ClassicalState(0.0, 1.0), [], tol=1e-10, k=1.0)
    with pytest.raises(ValueError):
        classical_evolve(h_cl, ClassicalState(0.0, 1.0), [0.0, 0.0], tol=1e-10, k=1.0)
    with pytest.raises(ValueError):
        classical_evolve(h_cl, ClassicalState(0.0, 1.0, t=1.0), [0.0, 2.0], tol=1e-10, k=1.0)


def test_barrier_is_unreachable_for_positive_k():
    # strong inward drift but the centrifugal wall turns it around
    h_cl = classical_hamiltonian(FREE, 0.5)
    traj = classical_evolve(
        h_cl, ClassicalState(-2.0, 0.5), np.linspace(0.0, 3.0, 31), tol=1e-11, k=0.5
    )
    assert min(s.w for s in traj.states) > 0


@pytest.mark.parametrize("n_particles", [1, 4, 16])
def test_quantum_free_evolution_quadratic_symbol(n_particles):
    # oracle: closed operator flow gives <A>(t) = A0 + B0 t + C0 t^2 = 1 + t^2
    k = 1.0
    cutoff = 40 + 12 * n_particles
    rep = RepParams(n_particles, k, cutoff)
    start = coherent_vector(CoherentSpec(rep, 0j))
    h_n = hamiltonian_matrix(rep, FREE)
    grid = np.linspace(0.0, 2.0, 21)
    traj = quantum_evolve(h_n, start, grid, tol=1e-12)
    expected = 1.0 + grid**2
    deviation = np.abs(np.asarray(traj.observables["A"]) - expected).max()
    assert deviation < 1e-8
    norms = np.asarray(traj.observables["norm"])
    assert np.abs(norms - 1.0).max() < 1e-8


def test_quantum_free_evolution_has_no_cubic_term():
    rep = RepParams(8, 1.0, 140)
    start = coherent_vector(CoherentSpec(rep, 0j))
    h_n = hamiltonian_matrix(rep, FREE)
    grid = np.linspace(0.0, 2.0, 21)
    traj = quantum_evolve(h_n, start, grid, tol=1e-12)
    coeffs = np.polyfit(grid, traj.observables["A"], 3)
    assert abs(coeffs[0]) < 1e-8


def test_quantum_zero_hamiltonian_is_constant():
    rep = RepParams(2, 1.0, 20)
    start = coherent_vector(CoherentSpec(rep, 0.2 + 0j))
    h_n = hamiltonian_matrix(rep, parse_hamiltonian("0"))
    traj = quantum_evolve(h_n, start, [0.0, 1.0, 2.0])
    for name in ("A", "B", "C"):
        series = traj.observables[name]
        assert series[0] == pytest.approx(series[-1], abs=1e-12)


def test_truncation_guard_trips_with_small_basis():
    rep = RepParams(4, 1.0, 12)
    start = coherent_vector(CoherentSpec(rep, 0j))
    h_n = hamiltonian_matrix(rep, FREE)
    with pytest.raises(TruncationGuardError) as err:
        quantum_evolve(h_n, start, np.linspace(0.0, 4.0, 17))
    assert err.value.time > 0


def test_quantum_evolve_rejects_mixed_reps():
    rep = RepParams(2, 1.0, 20)
    other = RepParams(3, 1.0, 20)
    start = coherent_vector(CoherentSpec(rep, 0j))
    with pytest.raises(RepresentationMismatchError):
        quantum_evolve(hamiltonian_matrix(other, FREE), start, [0.0, 1.0])


def test_quantum_nonhermitian_generator_uses_stepper():
    # literal-ordered A*C is not hermitian; the propagator must still run
    rep = RepParams(3, 1.0, 24)
    start = coherent_vector(CoherentSpec(rep, 0.1 + 0j))
    h_n = hamiltonian_matrix(rep, parse_hamiltonian("A*C"))
    assert not h_n.hermitian_flag
    traj = quantum_evolve(h_n, start, [0.0, 0.05, 0.1])
    assert len(traj.times) == 3


def test_correspondence_free_particle_is_exact():
    report = correspondence_compare(
        FREE, 0j, 1.0, [1, 2, 4, 8], np.linspace(0.0, 2.0, 11), tol=1e-11
    )
    assert report.passed
    assert report.extras["exact_match"] == 1.0
    assert all(v < 1e-8 for v in report.values)


def test_correspondence_initial_time_only():
    report = correspondence_compare(
        parse_hamiltonian("C + A^2/2"), 0.3 + 0j, 1.0, [2, 4, 8, 16], [0.0]
    )
    assert all(v < 1e-8 for v in report.values)


def test_correspondence_anharmonic_slope():
    report = correspondence_compare(
        parse_hamiltonian("C + A^2/2"),
        0.3 + 0j,
        1.0,
        [4, 8, 16, 32, 64],
        np.linspace(0.0, 1.0, 11),
        tol=1e-11,
    )
    assert -1.2 <= report.slope <= -0.8
    assert report.passed
