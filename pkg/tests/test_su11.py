import numpy as np
import pytest

from cohlim.observables import HamiltonianPolynomial, parse_hamiltonian
from cohlim.su11 import (
    OperatorMatrix,
    RepParams,
    RepresentationMismatchError,
    build_generator,
    commutator,
    hamiltonian_matrix,
    interior_dim,
)


def interior(op, margin):
    d = interior_dim(op.rep, margin)
    return op.entries[:d, :d]


def assert_interior_close(x, y, margin, tol=1e-12):
    a, b = interior(x, margin), interior(y, margin)
    scale = max(1.0, np.abs(b).max())
    assert np.abs(a - b).max() <= tol * scale


def test_k0_diagonal_small_rep():
    # oracle: K0|n> = (k + n/N)|n> evaluated by hand for N=1, k=1
    k0 = build_generator(RepParams(1, 1.0, 4), "K0")
    np.testing.assert_allclose(np.diag(k0.entries).real, [1, 2, 3, 4, 5], atol=0)
    assert np.abs(k0.entries - np.diag(np.diag(k0.entries))).max() == 0


def test_kplus_first_ladder_amplitude():
    # oracle: sqrt((n+1)(n+2J))/N at n=0, J=1, N=1 -> sqrt(2)
    kp = build_generator(RepParams(1, 1.0, 4), "Kplus")
    assert kp.entries[1, 0] == pytest.approx(np.sqrt(2.0), abs=1e-15)
    assert np.abs(np.diag(kp.entries)).max() == 0


def test_kminus_is_adjoint_of_kplus():
    rep = RepParams(3, 0.75, 12)
    kp = build_generator(rep, "Kplus")
    km = build_generator(rep, "Kminus")
    np.testing.assert_array_equal(km.entries, kp.entries.conj().T)


@pytest.mark.parametrize("n_particles", [1, 2, 4, 8, 16])
def test_invariant_triple_commutators(n_particles):
    rep = RepParams(n_particles, 1.0, 20)
    a = build_generator(rep, "A")
    b = build_generator(rep, "B")
    c = build_generator(rep, "C")
    chi = 1.0 / n_particles
    assert_interior_close(commutator(a, b), (2j * chi) * a, margin=2)
    assert_interior_close(commutator(a, c), (1j * chi) * b, margin=2)
    assert_interior_close(commutator(b, c), (2j * chi) * c, margin=2)


@pytest.mark.parametrize("n_particles,k", [(1, 1.0), (2, 1.0), (5, 0.75), (8, 2.5)])
def test_ladder_commutators(n_particles, k):
    rep = RepParams(n_particles, k, 16)
    k0 = build_generator(rep, "K0")
    kp = build_generator(rep, "Kplus")
    km = build_generator(rep, "Kminus")
    chi = 1.0 / n_particles
    assert_interior_close(commutator(km, kp), (2.0 * chi) * k0, margin=2)
    assert_interior_close(commutator(k0, kp), chi * kp, margin=2)
    assert_interior_close(commutator(k0, km), (-chi) * km, margin=2)


def test_self_commutator_is_zero():
    rep = RepParams(4, 1.0, 10)
    b = build_generator(rep, "B")
    assert np.abs(commutator(b, b).entries).max() == 0


def test_commutator_rejects_mixed_reps():
    x = build_generator(RepParams(2, 1.0, 8), "A")
    y = build_generator(RepParams(3, 1.0, 8), "B")
    with pytest.raises(RepresentationMismatchError):
        commutator(x, y)


@pytest.mark.parametrize("n_particles,k", [(1, 1.0), (2, 1.0), (4, 0.75), (16, 1.25)])
def test_casimir_is_constant_on_interior(n_particles, k):
    rep = RepParams(n_particles, k, 20)
    cas = build_generator(rep, "Casimir")
    expected = k * (k - 1.0 / n_particles)
    d = interior_dim(rep, 2)
    block = cas.entries[:d, :d]
    np.testing.assert_allclose(block, expected * np.eye(d), atol=1e-12 * max(1.0, abs(expected)))


def test_generators_carry_hermitian_flags():
    rep = RepParams(3, 1.0, 9)
    for name in ("K0", "K1", "K2", "A", "B", "C", "Casimir"):
        op = build_generator(rep, name)
        assert op.hermitian_flag
        assert op.is_hermitian()
    assert not build_generator(rep, "Kplus").hermitian_flag


def test_unknown_generator_name():
    with pytest.raises(ValueError, match="unknown generator"):
        build_generator(RepParams(1, 1.0, 2), "K3")


def test_cutoff_zero_shift_operator_is_zero():
    kp = build_generator(RepParams(1, 1.0, 0), "Kplus")
    assert kp.entries.shape == (1, 1)
    assert np.abs(kp.entries).max() == 0


def test_hamiltonian_matrix_free_particle():
    rep = RepParams(3, 1.0, 11)
    h = hamiltonian_matrix(rep, parse_hamiltonian("C"))
    k0 = build_generator(rep, "K0")
    k2 = build_generator(rep, "K2")
    np.testing.assert_allclose(h.entries, 3.0 * (k0.entries - k2.entries), atol=1e-14)


def test_hamiltonian_matrix_linear_in_a():
    rep = RepParams(5, 0.5, 9)
    h = hamiltonian_matrix(rep, parse_hamiltonian("A"))
    k0 = build_generator(rep, "K0")
    k2 = build_generator(rep, "K2")
    np.testing.assert_allclose(h.entries, 5.0 * (k0.entries + k2.entries), atol=1e-14)


def test_hamiltonian_matrix_zero():
    rep = RepParams(2, 1.0, 6)
    h = hamiltonian_matrix(rep, HamiltonianPolynomial.zero())
    assert np.abs(h.entries).max() == 0


def test_hamiltonian_ordering_literal_vs_symmetrized():
    # the AC monomial is not hermitian literally; symmetrizing fixes it,
    # and the two differ by the O(1/N) commutator [A, C]/2 = iB/(2N)
    rep = RepParams(4, 1.0, 12)
    poly = HamiltonianPolynomial({(1, 0, 1): 1.0})
    literal = hamiltonian_matrix(rep, poly, ordering="literal")
    symm = hamiltonian_matrix(rep, poly, ordering="symmetrized")
    assert not literal.hermitian_flag
    assert symm.hermitian_flag
    b = build_generator(rep, "B")
    diff = literal.entries - symm.entries
    d = interior_dim(rep, 2)
    np.testing.assert_allclose(
        diff[:d, :d], (rep.n_particles * 0.5j / rep.n_particles) * b.entries[:d, :d], atol=1e-12
    )


def test_hamiltonian_powers_are_hermitian():
    rep = RepParams(2, 1.0, 10)
    h = hamiltonian_matrix(rep, parse_hamiltonian("C + A^2/2"))
    assert h.hermitian_flag


def test_rep_params_validation():
    with pytest.raises(ValueError):
        RepParams(0, 1.0, 4)
    with pytest.raises(ValueError):
        RepParams(1, 0.0, 4)
    with pytest.raises(ValueError):
        RepParams(1, 1.0, -1)
    assert RepParams(3, 0.5, 7).j == pytest.approx(1.5)


def test_operator_entries_are_frozen():
    op = build_generator(RepParams(1, 1.0, 3), "K0")
    with pytest.raises(ValueError):
        op.entries[0, 0] = 99.0
