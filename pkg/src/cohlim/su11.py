"""Truncated SU(1,1) irreducible representation with 1/N-rescaled generators.

The invariant sector of N oscillator modes is spanned by number states
|n>, n = 0..cutoff, on which the rescaled generators act as

    K0|n>      = (k + n/N)|n>
    Kplus|n>   = sqrt((n+1)(n+2J))/N |n+1>,   J = N*k
    Kminus|n>  = sqrt(n(n+2J-1))/N |n-1>

so that [Kminus, Kplus] = (2/N) K0 and the Casimir K0^2 - K1^2 - K2^2
is the constant k(k - 1/N).  The bilinear invariants are recovered via
A = K0 + K2, B = 2 K1, C = K0 - K2.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .observables import HamiltonianPolynomial

GENERATOR_NAMES = ("K0", "K1", "K2", "Kplus", "Kminus", "Casimir", "A", "B", "C")


class RepresentationMismatchError(ValueError):
    """Raised when operands belong to different representations."""


@dataclass(frozen=True)
class RepParams:
    """Finite-N representation: N particles, rescaled index k, basis cutoff.

    The unscaled index J = N*k labels the underlying discrete-series
    representation; basis index n corresponds to N*m in the rescaled
    labelling, so it stays integral for every N.
    """

    n_particles: int
    k: float
    cutoff: int

    def __post_init__(self) -> None:
        if self.n_particles < 1:
            raise ValueError(f"n_particles must be >= 1, got {self.n_particles}")
        if not self.k > 0:
            raise ValueError(f"k must be > 0, got {self.k}")
        if self.cutoff < 0:
            raise ValueError(f"cutoff must be >= 0, got {self.cutoff}")

    @property
    def j(self) -> float:
        """Unscaled index J = N*k."""
        return self.n_particles * self.k

    @property
    def dim(self) -> int:
        return self.cutoff + 1


@dataclass(frozen=True)
class FockVector:
    """State vector over the |n> basis of a representation."""

    coefficients: np.ndarray
    rep: RepParams
    norm_deficit: float | None = None

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coefficients, dtype=complex)
        if coeffs.shape != (self.rep.dim,):
            raise ValueError(
                f"coefficient shape {coeffs.shape} does not match basis dimension {self.rep.dim}"
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coefficients", coeffs)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coefficients))


@dataclass(frozen=True)
class OperatorMatrix:
    """Dense operator over the |n> basis, tagged with its representation."""

    entries: np.ndarray
    rep: RepParams
    hermitian_flag: bool = False

    def __post_init__(self) -> None:
        entries = np.asarray(self.entries, dtype=complex)
        if entries.shape != (self.rep.dim, self.rep.dim):
            raise ValueError(
                f"entry shape {entries.shape} does not match basis dimension {self.rep.dim}"
            )
        entries.setflags(write=False)
        object.__setattr__(self, "entries", entries)

    def _check_rep(self, other: "OperatorMatrix") -> None:
        if self.rep != other.rep:
            raise RepresentationMismatchError(
                f"mixed representations: {self.rep} vs {other.rep}"
            )

    def __add__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_rep(other)
        return OperatorMatrix(
            self.entries + other.entries,
            self.rep,
            hermitian_flag=self.hermitian_flag and other.hermitian_flag,
        )

    def __sub__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_rep(other)
        return OperatorMatrix(
            self.entries - other.entries,
            self.rep,
            hermitian_flag=self.hermitian_flag and other.hermitian_flag,
        )

    def __matmul__(self, other: "OperatorMatrix") -> "OperatorMatrix":
        self._check_rep(other)
        return OperatorMatrix(self.entries @ other.entries, self.rep)

    def __mul__(self, scalar: complex) -> "OperatorMatrix":
        entries = self.entries * scalar
        hermitian = self.hermitian_flag and float(np.imag(scalar)) == 0.0
        return OperatorMatrix(entries, self.rep, hermitian_flag=hermitian)

    __rmul__ = __mul__

    def __neg__(self) -> "OperatorMatrix":
        return self * (-1.0)

    def dagger(self) -> "OperatorMatrix":
        return OperatorMatrix(
            self.entries.conj().T, self.rep, hermitian_flag=self.hermitian_flag
        )

    def apply(self, vec: FockVector) -> FockVector:
        if vec.rep != self.rep:
            raise RepresentationMismatchError(
                f"mixed representations: {self.rep} vs {vec.rep}"
            )
        return FockVector(self.entries @ vec.coefficients, self.rep)

    def is_hermitian(self, tol: float = 1e-12) -> bool:
        scale = max(1.0, float(np.abs(self.entries).max(initial=0.0)))
        return bool(np.abs(self.entries - self.entries.conj().T).max(initial=0.0) <= tol * scale)


def _ladder_coefficients(rep: RepParams) -> np.ndarray:
    # entry n is the amplitude <n+1|Kplus|n>; (n+1)(n+2J) avoids the
    # cancellation in (J+n)(J+n+1) - J(J-1)
    n = np.arange(rep.cutoff, dtype=float)
    return np.sqrt((n + 1.0) * (n + 2.0 * rep.j)) / rep.n_particles


def build_generator(rep: RepParams, which: str) -> OperatorMatrix:
    """Build one of the rescaled generators as a dense matrix.

    Recognized names: K0, K1, K2, Kplus, Kminus, Casimir, A, B, C.
    Shift operators on a cutoff-0 space are legal and come out zero.
    """
    if which not in GENERATOR_NAMES:
        raise ValueError(f"unknown generator {which!r}; expected one of {GENERATOR_NAMES}")

    dim = rep.dim
    if which == "K0":
        diag = rep.k + np.arange(dim) / rep.n_particles
        return OperatorMatrix(np.diag(diag).astype(complex), rep, hermitian_flag=True)
    if which == "Kplus":
        entries = np.zeros((dim, dim), dtype=complex)
        if rep.cutoff > 0:
            entries[np.arange(1, dim), np.arange(dim - 1)] = _ladder_coefficients(rep)
        return OperatorMatrix(entries, rep)
    if which == "Kminus":
        return build_generator(rep, "Kplus").dagger()
    if which == "K1":
        kp = build_generator(rep, "Kplus")
        op = 0.5 * (kp + kp.dagger())
        return OperatorMatrix(op.entries, rep, hermitian_flag=True)
    if which == "K2":
        kp = build_generator(rep, "Kplus")
        op = (-0.5j) * (kp - kp.dagger())
        return OperatorMatrix(op.entries, rep, hermitian_flag=True)
    if which == "Casimir":
        k0 = build_generator(rep, "K0")
        k1 = build_generator(rep, "K1")
        k2 = build_generator(rep, "K2")
        op = k0 @ k0 - k1 @ k1 - k2 @ k2
        return OperatorMatrix(op.entries, rep, hermitian_flag=True)
    if which == "A":
        op = build_generator(rep, "K0") + build_generator(rep, "K2")
        return OperatorMatrix(op.entries, rep, hermitian_flag=True)
    if which == "B":
        op = 2.0 * build_generator(rep, "K1")
        return OperatorMatrix(op.entries, rep, hermitian_flag=True)
    # C
    op = build_generator(rep, "K0") - build_generator(rep, "K2")
    return OperatorMatrix(op.entries, rep, hermitian_flag=True)


def commutator(x: OperatorMatrix, y: OperatorMatrix) -> OperatorMatrix:
    """XY - YX.  Operands must share the same representation."""
    return x @ y - y @ x


def polynomial_operator(
    rep: RepParams,
    h: HamiltonianPolynomial,
    ordering: str = "literal",
) -> OperatorMatrix:
    """Assemble h(A, B, C) over the truncated basis.

    With ordering="literal" each monomial is the product A^a B^b C^c in
    that order; "symmetrized" averages over all distinct orderings of
    the same letters.  Ordering differences are O(1/N) and invisible in
    the classical limit.
    """
    if ordering not in ("literal", "symmetrized"):
        raise ValueError(f"unknown ordering {ordering!r}")
    basic = {
        "A": build_generator(rep, "A").entries,
        "B": build_generator(rep, "B").entries,
        "C": build_generator(rep, "C").entries,
    }
    total = np.zeros((rep.dim, rep.dim), dtype=complex)
    identity = np.eye(rep.dim, dtype=complex)
    for (a, b, c), coeff in sorted(h.terms.items()):
        word = "A" * a + "B" * b + "C" * c
        if not word:
            total += coeff * identity
            continue
        if ordering == "literal":
            words = [word]
        else:
            words = sorted(set("".join(p) for p in itertools.permutations(word)))
        acc = np.zeros((rep.dim, rep.dim), dtype=complex)
        for w in words:
            mono = identity
            for letter in w:
                mono = mono @ basic[letter]
            acc += mono
        total += (coeff / len(words)) * acc
    if not np.all(np.isfinite(total)):
        raise OverflowError("operator entries overflow; reduce cutoff or degree")
    op = OperatorMatrix(total, rep)
    if op.is_hermitian():
        op = OperatorMatrix(total, rep, hermitian_flag=True)
    return op


def hamiltonian_matrix(
    rep: RepParams,
    h: HamiltonianPolynomial,
    ordering: str = "literal",
) -> OperatorMatrix:
    """N * h(A, B, C): the generator of the dynamics at particle number N."""
    return float(rep.n_particles) * polynomial_operator(rep, h, ordering)


def interior_dim(rep: RepParams, bandwidth: int) -> int:
    """Number of leading basis states unaffected by the cutoff for an
    operator (or operator product) of the given total bandwidth."""
    return max(rep.dim - bandwidth, 0)


def bargmann_index_from_angular_momentum(l: int) -> float:
    """Rescaled index k = (l + 1/2)/2 attached to integer angular momentum l."""
    if l < 0 or l != int(l):
        raise ValueError(f"l must be a non-negative integer, got {l}")
    return 0.5 * (l + 0.5)


def angular_momentum_from_bargmann_index(k: float, tol: float = 1e-9) -> int:
    """Invert k = (l + 1/2)/2; raises if k is not of that form."""
    l = 2.0 * k - 0.5
    l_int = round(l)
    if l_int < 0 or abs(l - l_int) > tol:
        raise ValueError(f"k={k} does not correspond to an integer angular momentum")
    return int(l_int)


def total_excitation_mean(vec: FockVector) -> float:
    """Mean basis index <n> of a state; useful as a truncation diagnostic."""
    probs = np.abs(vec.coefficients) ** 2
    return float(np.arange(vec.rep.dim) @ probs)


def polynomial_bandwidth(h: HamiltonianPolynomial) -> int:
    """Off-diagonal reach of h(A, B, C): each letter moves n by at most 1."""
    if not h.terms:
        return 0
    return max(a + b + c for (a, b, c) in h.terms)


def generator_bandwidth(which: str) -> int:
    if which in ("K0",):
        return 0
    if which in ("K1", "K2", "Kplus", "Kminus", "A", "B", "C"):
        return 1
    if which == "Casimir":
        return 2
    raise ValueError(f"unknown generator {which!r}")
