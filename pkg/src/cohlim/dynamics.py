"""Quantum and classical time evolution and their correspondence.

The quantum side solves i d/dt psi = H_N psi with the rescaled
generators, so the effective Planck constant is 1/N and the rescaled
operator flow is N-independent at leading order; the classical side
integrates vdot = -dh/dw, wdot = dh/dv on the half plane.  Both record
the invariant triple (A, B, C) along the way.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import eigh, expm

from .classical_limit import (
    DEFAULT_SLOPE_BAND,
    SweepReport,
    canonical_coordinates,
    classical_hamiltonian,
    fit_decay,
)
from .coherent import CoherentSpec, coherent_vector, cutoff_for_tau
from .observables import HamiltonianPolynomial, PhaseObservable, basic_symbol, evaluate
from .parallel import ordered_map
from .su11 import (
    FockVector,
    OperatorMatrix,
    RepParams,
    RepresentationMismatchError,
    build_generator,
    hamiltonian_matrix,
    polynomial_bandwidth,
)

GUARD_LEVELS = 5
GUARD_THRESHOLD = 1e-8
_DENSE_PROPAGATOR_LIMIT = 513


class TruncationGuardError(RuntimeError):
    """Population reached the top of the truncated basis."""

    def __init__(self, time: float, population: float, threshold: float):
        super().__init__(
            f"truncation guard tripped at t={time:.6g}: top-level population "
            f"{population:.3e} exceeds {threshold:.1e}"
        )
        self.time = time
        self.population = population


class HalfPlaneBarrierError(RuntimeError):
    """The classical flow reached w <= 0 (impossible at k > 0 and finite energy)."""


@dataclass(frozen=True)
class ClassicalState:
    """Point (v, w) on the half plane at time t."""

    v: float
    w: float
    t: float = 0.0

    def __post_init__(self) -> None:
        if not self.w > 0:
            raise ValueError(f"w must be > 0, got {self.w}")


@dataclass(frozen=True)
class Trajectory:
    """Time-ordered samples of a quantum or classical evolution."""

    kind: str
    times: tuple[float, ...]
    observables: dict[str, tuple[float, ...]]
    states: tuple
    metadata: dict = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.kind not in ("quantum", "classical"):
            raise ValueError(f"kind must be quantum or classical, got {self.kind!r}")
        times = tuple(float(t) for t in self.times)
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("sample times must be strictly increasing")
        object.__setattr__(self, "times", times)
        for name, series in self.observables.items():
            if len(series) != len(times):
                raise ValueError(f"series {name!r} length does not match times")


def _check_grid(t_grid) -> np.ndarray:
    grid = np.asarray([float(t) for t in t_grid])
    if grid.size == 0:
        raise ValueError("empty time grid")
    if np.any(np.diff(grid) <= 0):
        raise ValueError("time grid must be strictly increasing")
    return grid


def classical_evolve(
    h_cl: PhaseObservable,
    start: ClassicalState,
    t_grid,
    tol: float = 1e-10,
    *,
    k: float,
) -> Trajectory:
    """Integrate Hamilton's equations vdot = -dh/dw, wdot = dh/dv.

    Samples land on t_grid (absolute times; the first entry must not
    precede start.t).  Per-step error is controlled by tol and the
    centrifugal term keeps w > 0 for k > 0 at finite energy.
    """
    grid = _check_grid(t_grid)
    if grid[0] < start.t:
        raise ValueError("time grid must start at or after the initial time")
    dh_dv = h_cl.d_dv()
    dh_dw = h_cl.d_dw()

    def rhs(_t, y):
        v, w = y
        if not w > 0:
            raise HalfPlaneBarrierError(f"classical flow reached w={w:.3e}")
        return (-evaluate(dh_dw, v, w), evaluate(dh_dv, v, w))

    if grid[-1] == start.t:
        vs = np.full(grid.shape, start.v)
        ws = np.full(grid.shape, start.w)
    else:
        sol = solve_ivp(
            rhs,
            (start.t, float(grid[-1])),
            (start.v, start.w),
            t_eval=grid,
            method="DOP853",
            rtol=tol,
            atol=tol,
        )
        if not sol.success:
            raise RuntimeError(f"classical integration failed: {sol.message}")
        vs, ws = sol.y
    if np.any(ws <= 0):
        raise HalfPlaneBarrierError("classical flow reached the w = 0 barrier")
    symbols = {name: basic_symbol(name, k) for name in ("A", "B", "C")}
    observables = {
        name: tuple(evaluate(poly, v, w) for v, w in zip(vs, ws))
        for name, poly in symbols.items()
    }
    observables["energy"] = tuple(evaluate(h_cl, v, w) for v, w in zip(vs, ws))
    states = tuple(ClassicalState(float(v), float(w), float(t)) for v, w, t in zip(vs, ws, grid))
    return Trajectory(
        "classical",
        tuple(grid),
        observables,
        states,
        metadata={"tol": tol, "k": k},
    )


def free_particle_analytic(start: ClassicalState, k: float, t: float) -> ClassicalState:
    """Closed-form flow of h = v^2 w + k^2/w.

    w is exactly quadratic in time, w(t) = w0 + 2 v0 w0 t + h0 t^2, and
    v = wdot/(2w); under w = r^2/2, v = p/r this is free radial motion
    with squared angular momentum (2k)^2.
    """
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    h0 = start.v**2 * start.w + k**2 / start.w
    w = start.w + 2.0 * start.v * start.w * t + h0 * t * t
    wdot = 2.0 * start.v * start.w + 2.0 * h0 * t
    return ClassicalState(wdot / (2.0 * w), w, start.t + t)


def _top_population(coeffs: np.ndarray, levels: int) -> float:
    take = min(levels, coeffs.size)
    return float(np.sum(np.abs(coeffs[-take:]) ** 2))


def quantum_evolve(
    h: OperatorMatrix,
    start: FockVector,
    t_grid,
    tol: float = 1e-10,
    guard_threshold: float = GUARD_THRESHOLD,
    guard_levels: int = GUARD_LEVELS,
) -> Trajectory:
    """Solve i d/dt psi = H psi from the prepared state at t = 0.

    Hermitian generators are propagated through their spectral
    decomposition (a dense matrix exponential); larger or non-hermitian
    problems fall back to adaptive integration at tolerance tol.  The
    norm is never renormalized - its drift is a diagnostic - and the
    evolution aborts when the top basis levels accumulate population
    beyond guard_threshold.
    """
    if h.rep != start.rep:
        raise RepresentationMismatchError(
            f"operator representation {h.rep} does not match state {start.rep}"
        )
    grid = _check_grid(t_grid)
    rep = h.rep
    psi0 = start.coefficients.astype(complex)

    if rep.dim <= _DENSE_PROPAGATOR_LIMIT and h.is_hermitian(1e-12):
        energies, modes = eigh(h.entries)
        amplitudes = modes.conj().T @ psi0
        states = [
            modes @ (np.exp(-1j * energies * t) * amplitudes) for t in grid
        ]
    elif rep.dim <= _DENSE_PROPAGATOR_LIMIT:
        states = []
        psi = psi0
        previous = 0.0
        for t in grid:
            psi = expm(-1j * h.entries * (t - previous)) @ psi if t != previous else psi
            previous = t
            states.append(psi)
    else:
        sol = solve_ivp(
            lambda _t, y: -1j * (h.entries @ y),
            (0.0, float(grid[-1])),
            psi0,
            t_eval=grid,
            method="DOP853",
            rtol=tol,
            atol=tol,
        )
        if not sol.success:
            raise RuntimeError(f"quantum integration failed: {sol.message}")
        states = [sol.y[:, i] for i in range(grid.size)]

    for t, psi in zip(grid, states):
        population = _top_population(psi, guard_levels)
        if population > guard_threshold:
            raise TruncationGuardError(float(t), population, guard_threshold)

    ops = {name: build_generator(rep, name).entries for name in ("A", "B", "C")}
    observables = {
        name: tuple(float(np.vdot(psi, op @ psi).real) for psi in states)
        for name, op in ops.items()
    }
    observables["norm"] = tuple(float(np.linalg.norm(psi)) for psi in states)
    return Trajectory(
        "quantum",
        tuple(grid),
        observables,
        tuple(FockVector(psi, rep) for psi in states),
        metadata={"tol": tol, "rep": rep},
    )


def _evolution_cutoff(
    n_particles: int, k: float, tau0: complex, classical: Trajectory
) -> int:
    # size the basis from the classical excursion: <n> tracks N*(K0 - k)
    k0_max = max(
        0.5 * (a + c) for a, c in zip(classical.observables["A"], classical.observables["C"])
    )
    drift = max(k0_max - k, 0.0)
    estimate = int(
        math.ceil(2.5 * n_particles * drift + 12.0 * math.sqrt(n_particles * drift + 1.0) + 30)
    )
    return max(cutoff_for_tau(abs(tau0), n_particles * k, margin=4), estimate)


def correspondence_compare(
    h: HamiltonianPolynomial,
    tau0: complex,
    k: float,
    n_values,
    t_grid,
    ordering: str = "literal",
    tol: float = 1e-10,
    slope_band: tuple[float, float] = DEFAULT_SLOPE_BAND,
) -> SweepReport:
    """Worst quantum-classical deviation of the invariant triple per N.

    For each N the quantum state starts from the coherent state at tau0
    and evolves under H_N = N h(A, B, C); the classical point starts at
    the converted (v, w) and follows the extracted Hamiltonian.  The
    reported value is max over the grid and over (A, B, C) of the
    symbol deviation; its decay in N is fitted on the log-log scale.
    """
    ns = tuple(int(n) for n in n_values)
    grid = _check_grid(t_grid)
    if grid[0] < 0:
        raise ValueError("time grid must start at t >= 0")
    v0, w0 = canonical_coordinates(tau0, k)
    h_cl = classical_hamiltonian(h, k)
    classical = classical_evolve(
        h_cl, ClassicalState(v0, w0, 0.0), np.concatenate(([0.0], grid)) if grid[0] > 0 else grid,
        tol=tol, k=k,
    )
    keep = slice(1, None) if grid[0] > 0 else slice(None)
    classical_series = {
        name: np.asarray(classical.observables[name][keep]) for name in ("A", "B", "C")
    }

    def one(n: int) -> float:
        cutoff = _evolution_cutoff(n, k, tau0, classical)
        bandwidth = polynomial_bandwidth(h)
        for attempt in range(4):
            rep = RepParams(n, k, cutoff)
            psi0 = coherent_vector(CoherentSpec(rep, tau0))
            h_n = hamiltonian_matrix(rep, h, ordering)
            try:
                quantum = quantum_evolve(h_n, psi0, grid, tol=tol)
            except TruncationGuardError:
                if attempt == 3:
                    raise
                cutoff = 2 * cutoff + bandwidth
                continue
            return max(
                float(
                    np.max(
                        np.abs(np.asarray(quantum.observables[name]) - classical_series[name])
                    )
                )
                for name in ("A", "B", "C")
            )
        raise AssertionError("unreachable")

    values = tuple(ordered_map(one, ns))
    reference = tuple(0.0 for _ in ns)
    slope, intercept, residual = fit_decay(ns, values)
    exact = all(v <= 1e-8 for v in values)
    passed = exact or (not math.isnan(slope) and slope_band[0] <= slope <= slope_band[1])
    return SweepReport(
        ns,
        values,
        reference,
        slope,
        intercept,
        residual,
        fit_scale="log-log",
        passed=passed,
        extras={"exact_match": float(exact)},
    )
