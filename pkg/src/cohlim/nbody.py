"""Brute-force few-oscillator construction of the invariant algebra.

Everything here is built from explicit mode operators on the full
d^N-dimensional product space (no invariant-sector shortcut), so it
serves as a first-principles oracle for the truncated representation:
the bilinears A, B, C, the quadratic Casimir, the total angular
momentum and the number operator are all assembled from ladders obeying
[a_i, a_j^dagger] = (1/N) delta_ij.

Identities are only exact away from the per-mode cutoffs; the "safe
subspace" keeps total excitation at least 4 below d because every
checked operator has per-mode bandwidth at most 2.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

MEMORY_CEILING = 20736
SAFE_GAP = 4
INVARIANT_NAMES = ("A", "B", "C", "K0", "K1", "K2", "Casimir", "Lsq", "NumberOp")


@dataclass(frozen=True)
class MultiOscRep:
    """N explicit oscillator modes, each truncated at per_mode_cutoff levels."""

    n_particles: int
    per_mode_cutoff: int
    memory_ceiling: int = MEMORY_CEILING

    def __post_init__(self) -> None:
        if self.n_particles not in (1, 2, 3):
            raise ValueError(f"N must be 1, 2 or 3, got {self.n_particles}")
        if self.per_mode_cutoff < SAFE_GAP + 1:
            raise ValueError(
                f"per-mode dimension must exceed {SAFE_GAP}, got {self.per_mode_cutoff}"
            )
        if self.dim > self.memory_ceiling:
            raise MemoryError(
                f"total dimension {self.dim} exceeds the ceiling {self.memory_ceiling}"
            )

    @property
    def dim(self) -> int:
        return self.per_mode_cutoff**self.n_particles

    def occupations(self) -> np.ndarray:
        """Per-mode occupation digits of every product-basis index."""
        idx = np.arange(self.dim)
        digits = []
        for _ in range(self.n_particles):
            digits.append(idx % self.per_mode_cutoff)
            idx = idx // self.per_mode_cutoff
        return np.stack(digits[::-1], axis=1)

    def safe_mask(self) -> np.ndarray:
        return self.occupations().sum(axis=1) <= self.per_mode_cutoff - SAFE_GAP


def _embed(single: np.ndarray, mode: int, rep: MultiOscRep) -> np.ndarray:
    d = rep.per_mode_cutoff
    mats = [np.eye(d, dtype=complex)] * rep.n_particles
    mats[mode] = single
    return reduce(np.kron, mats)


def build_mode_operators(rep: MultiOscRep) -> dict[str, list[np.ndarray]]:
    """Scaled position, momentum and ladder matrices for each mode.

    The 1/sqrt(N) in the ladder normalization realizes
    i [p_i, q_j] = (1/N) delta_ij on the full space.
    """
    d = rep.per_mode_cutoff
    lower = np.zeros((d, d), dtype=complex)
    for n in range(1, d):
        lower[n - 1, n] = math.sqrt(n)
    scale = 1.0 / math.sqrt(rep.n_particles)
    annihilators = [scale * _embed(lower, i, rep) for i in range(rep.n_particles)]
    creators = [a.conj().T for a in annihilators]
    sqrt2 = math.sqrt(2.0)
    positions = [(ad + a) / sqrt2 for a, ad in zip(annihilators, creators)]
    momenta = [1j * (ad - a) / sqrt2 for a, ad in zip(annihilators, creators)]
    return {"q": positions, "p": momenta, "a": annihilators, "adag": creators}


def build_invariants(rep: MultiOscRep) -> dict[str, np.ndarray]:
    """All checked operators on the full product space.

    B uses the symmetrized form (qp + pq)/2 summed over modes; the
    angular momentum is Lsq = (1/2) sum_ij (q_i p_j - q_j p_i)^2.
    """
    modes = build_mode_operators(rep)
    q, p = modes["q"], modes["p"]
    dim = rep.dim
    a_op = 0.5 * sum(qi @ qi for qi in q)
    b_op = 0.5 * sum(qi @ pi + pi @ qi for qi, pi in zip(q, p))
    c_op = 0.5 * sum(pi @ pi for pi in p)
    k0 = 0.5 * (a_op + c_op)
    k1 = 0.5 * b_op
    k2 = 0.5 * (a_op - c_op)
    casimir = k0 @ k0 - k1 @ k1 - k2 @ k2
    lsq = np.zeros((dim, dim), dtype=complex)
    for i in range(rep.n_particles):
        for j in range(rep.n_particles):
            if i == j:
                continue
            l_ij = q[i] @ p[j] - q[j] @ p[i]
            lsq += 0.5 * (l_ij @ l_ij)
    number_op = sum(ad @ a for a, ad in zip(modes["a"], modes["adag"]))
    return {
        "A": a_op,
        "B": b_op,
        "C": c_op,
        "K0": k0,
        "K1": k1,
        "K2": k2,
        "Casimir": casimir,
        "Lsq": lsq,
        "NumberOp": number_op,
    }


def _safe_block(matrix: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return matrix[np.ix_(mask, mask)]


def casimir_identity_check(rep: MultiOscRep) -> float:
    """Operator-norm residual of Casimir = (Lsq + 1/4 - 1/N)/4 on the safe block."""
    ops = build_invariants(rep)
    mask = rep.safe_mask()
    shift = (0.25 - 1.0 / rep.n_particles) * np.eye(rep.dim)
    residual = ops["Casimir"] - 0.25 * (ops["Lsq"] + shift)
    return float(np.linalg.norm(_safe_block(residual, mask), 2))


@dataclass(frozen=True)
class AngularLevel:
    """One matched angular-momentum level of the explicit construction."""

    l: float
    eigenvalue: float
    multiplicity: int
    k: float
    integer_l: bool


@dataclass(frozen=True)
class LSpectrumReport:
    """Matched levels of Lsq against l(l + 1 - 2/N).

    Every level carries l in (1/N) * naturals; the integer-l sub-lattice
    is the one obeying k = (l + 1/2)/2 with natural l, and the check
    requires all its predicted levels (up to the safe bound) present.
    Fractional-l levels are reported, not reconciled.
    """

    n_particles: int
    levels: tuple[AngularLevel, ...]
    unmatched: tuple[float, ...]
    missing_integer_l: tuple[int, ...]
    passed: bool


def _expected_integer_l(rep: MultiOscRep) -> list[int]:
    # sector l starts at excitation N*l and must fit in the safe block;
    # one mode supports no rotation, leaving only the two zero sectors
    if rep.n_particles == 1:
        return [0, 1]
    return list(range((rep.per_mode_cutoff - SAFE_GAP) // rep.n_particles + 1))


def l_spectrum_check(rep: MultiOscRep, tol: float = 1e-8) -> LSpectrumReport:
    """Diagonalize Lsq on the safe subspace and classify every level."""
    ops = build_invariants(rep)
    mask = rep.safe_mask()
    eigenvalues = np.linalg.eigvalsh(_safe_block(ops["Lsq"], mask))
    n = rep.n_particles
    coeff = 1.0 - 2.0 / n

    # cluster the sorted eigenvalues by gap; keep cluster means
    grouped: dict[float, int] = {}
    cluster: list[float] = []
    for lam in list(np.sort(eigenvalues)) + [math.inf]:
        if cluster and lam - cluster[-1] > 1e-9 * max(1.0, abs(cluster[-1])):
            grouped[float(np.mean(cluster))] = len(cluster)
            cluster = []
        if lam != math.inf:
            cluster.append(float(lam))

    # prediction table on the lattice l in (1/N) * naturals
    lam_max = max(grouped) if grouped else 0.0
    predictions: list[tuple[float, float]] = []
    m = 0
    while True:
        l_val = m / n
        lam_pred = l_val * (l_val + coeff)
        predictions.append((l_val, lam_pred))
        if lam_pred > lam_max + 1.0 and l_val > 1.0:
            break
        m += 1

    levels: list[AngularLevel] = []
    unmatched: list[float] = []
    seen_integer_l: set[int] = set()
    for lam, mult in sorted(grouped.items()):
        hits = [
            l_val
            for l_val, lam_pred in predictions
            if abs(lam_pred - lam) <= tol * max(1.0, abs(lam))
        ]
        if not hits:
            unmatched.append(lam)
            continue
        for l_val in hits:
            is_integer = abs(l_val - round(l_val)) < 1e-12
            if is_integer:
                seen_integer_l.add(int(round(l_val)))
            levels.append(
                AngularLevel(
                    l=l_val,
                    eigenvalue=float(lam),
                    multiplicity=mult,
                    k=0.5 * (l_val + 0.5),
                    integer_l=is_integer,
                )
            )

    missing = [l for l in _expected_integer_l(rep) if l not in seen_integer_l]
    passed = not unmatched and not missing
    return LSpectrumReport(n, tuple(levels), tuple(unmatched), tuple(missing), passed)
