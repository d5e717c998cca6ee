"""Pseudo-spin coherent states over the truncated number basis.

A state is labelled by tau in the open unit disk; its expansion
coefficients over |n> are

    c_n = (1 - |tau|^2)^J * sqrt(Gamma(2J + n) / (n! Gamma(2J))) * tau^n

with J = N*k.  All Gamma ratios are evaluated in the log domain, and
the basis cutoff is certified by a geometric bound on the discarded
probability mass.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np
from scipy.special import gammaln

from .charts import DomainError
from .su11 import FockVector, OperatorMatrix, RepParams, RepresentationMismatchError

TAIL_TOLERANCE = 1e-12
_MAX_CUTOFF_SCAN = 200_000


class TailBoundError(ValueError):
    """The requested cutoff cannot certify the coefficient tail."""


@dataclass(frozen=True)
class QuadratureParams:
    """Radial Gauss-Legendre order for the completeness integral."""

    order: int = 64

    def __post_init__(self) -> None:
        if self.order < 1:
            raise ValueError(f"quadrature order must be >= 1, got {self.order}")


def _log_prob(n: np.ndarray, j: float, log_x: float, log_one_minus_x: float) -> np.ndarray:
    # log |c_n|^2 for x = |tau|^2 > 0
    return (
        2.0 * j * log_one_minus_x
        + gammaln(2.0 * j + n)
        - gammaln(n + 1.0)
        - gammaln(2.0 * j)
        + n * log_x
    )


def tail_bound(tau_abs: float, j: float, cutoff: int) -> float:
    """Upper bound on the probability mass beyond the cutoff.

    The weights decay with ratio r_n = x (2J + n)/(n + 1) -> x, so past
    the cutoff the tail is dominated by the geometric series with ratio
    rho = max(r_cutoff+1, x) whenever rho < 1.
    """
    if not 0.0 <= tau_abs < 1.0:
        raise DomainError("tau modulus must be < 1")
    if tau_abs == 0.0:
        return 0.0
    x = tau_abs * tau_abs
    m = cutoff
    rho = max(x * (2.0 * j + m + 1.0) / (m + 2.0), x)
    if rho >= 1.0:
        return math.inf
    log_pm = float(_log_prob(np.array([float(m)]), j, math.log(x), math.log1p(-x))[0])
    return math.exp(log_pm) * rho / (1.0 - rho)


def cutoff_for_tau(
    tau_abs: float,
    j: float,
    tail_tol: float = TAIL_TOLERANCE,
    margin: int = 2,
) -> int:
    """Smallest cutoff whose tail bound is below tail_tol, plus margin."""
    if not 0.0 <= tau_abs < 1.0:
        raise DomainError("tau modulus must be < 1")
    if tau_abs == 0.0:
        return margin
    x = tau_abs * tau_abs
    # begin the scan near the bulk of the weight distribution
    mean = 2.0 * j * x / (1.0 - x)
    m = max(0, int(mean))
    while m < _MAX_CUTOFF_SCAN:
        if tail_bound(tau_abs, j, m) < tail_tol:
            return m + margin
        m += 1 + m // 8
    raise TailBoundError(
        f"no cutoff below {_MAX_CUTOFF_SCAN} certifies tail {tail_tol} at |tau|={tau_abs}"
    )


@dataclass(frozen=True)
class CoherentSpec:
    """A coherent state: representation plus disk label tau."""

    rep: RepParams
    tau: complex
    tail_tol: float = TAIL_TOLERANCE

    def __post_init__(self) -> None:
        object.__setattr__(self, "tau", complex(self.tau))
        if abs(self.tau) >= 1.0:
            raise DomainError("tau modulus must be < 1")
        bound = tail_bound(abs(self.tau), self.rep.j, self.rep.cutoff)
        if not bound < self.tail_tol:
            raise TailBoundError(
                f"cutoff {self.rep.cutoff} leaves tail bound {bound:.3e} >= {self.tail_tol} "
                f"at |tau|={abs(self.tau):.4f}, J={self.rep.j}"
            )


def coherent_vector(spec: CoherentSpec) -> FockVector:
    """Expansion coefficients of the coherent state over |n>.

    The vector is not renormalized; the (certified tiny) truncation
    deficit is reported on the result.
    """
    rep = spec.rep
    tau = spec.tau
    if tau == 0:
        coeffs = np.zeros(rep.dim, dtype=complex)
        coeffs[0] = 1.0
        return FockVector(coeffs, rep, norm_deficit=0.0)
    n = np.arange(rep.dim, dtype=float)
    x = abs(tau) ** 2
    log_mag2 = _log_prob(n, rep.j, math.log(x), math.log1p(-x))
    phase = np.exp(1j * n * cmath.phase(tau))
    coeffs = np.exp(0.5 * log_mag2) * phase
    deficit = 1.0 - float(np.sum(np.exp(log_mag2)))
    return FockVector(coeffs, rep, norm_deficit=deficit)


def overlap_closed(tau: complex, tau_prime: complex, j: float) -> complex:
    """Closed-form overlap <Omega(tau)|Omega(tau')> at unscaled index J.

    Equals (1-|tau'|^2)^J (1-|tau|^2)^J / (1 - tau' tau*)^(2J),
    evaluated through logs so large J cannot overflow.
    """
    if abs(tau) >= 1.0 or abs(tau_prime) >= 1.0:
        raise DomainError("tau modulus must be < 1")
    if not j > 0:
        raise ValueError(f"J must be > 0, got {j}")
    if tau == tau_prime:
        return 1.0 + 0j
    u = tau_prime * tau.conjugate()
    log_overlap = j * (
        math.log1p(-abs(tau_prime) ** 2) + math.log1p(-abs(tau) ** 2)
    ) - 2.0 * j * cmath.log(1.0 - u)
    return cmath.exp(log_overlap)


def delta_exponent(tau: complex, tau_prime: complex, k: float) -> complex:
    """Rate Delta with exp(-N*Delta) equal to the overlap at J = N*k.

    Delta = -k [ln(1-|tau'|^2) + ln(1-|tau|^2) - 2 ln(1 - tau' tau*)];
    its real part is strictly positive for distinct labels and zero only
    at tau = tau'.
    """
    if abs(tau) >= 1.0 or abs(tau_prime) >= 1.0:
        raise DomainError("tau modulus must be < 1")
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    if tau == tau_prime:
        return 0j
    u = tau_prime * tau.conjugate()
    return -k * (
        math.log1p(-abs(tau_prime) ** 2)
        + math.log1p(-abs(tau) ** 2)
        - 2.0 * cmath.log(1.0 - u)
    )


def symbol(x: OperatorMatrix, spec: CoherentSpec) -> complex:
    """Coherent-state expectation value <Omega|X|Omega> in the truncated basis."""
    if x.rep != spec.rep:
        raise RepresentationMismatchError(
            f"operator representation {x.rep} does not match state {spec.rep}"
        )
    vec = coherent_vector(spec).coefficients
    return complex(np.vdot(vec, x.entries @ vec))


def matrix_element_closed(name: str, tau: complex, tau_prime: complex, k: float) -> complex:
    """Closed-form ratio <Omega|K|Omega'> / <Omega|Omega'> for K0, K1, K2.

    Off the diagonal the numerators are k(1 + tau' tau*), k(tau' + tau*)
    and i k(tau' - tau*): the diagonal closed forms with |tau|^2, 2 Re tau
    and -2 Im tau continued to two labels.  The two-label forms are the
    ones confirmed by direct contraction of the truncated matrices.
    """
    if abs(tau) >= 1.0 or abs(tau_prime) >= 1.0:
        raise DomainError("tau modulus must be < 1")
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    u = tau_prime * tau.conjugate()
    denom = 1.0 - u
    if name == "K0":
        return k * (1.0 + u) / denom
    if name == "K1":
        return k * (tau_prime + tau.conjugate()) / denom
    if name == "K2":
        return 1j * k * (tau_prime - tau.conjugate()) / denom
    raise ValueError(f"unknown matrix-element name {name!r}; expected K0, K1 or K2")


def diagonal_symbol(name: str, tau: complex, k: float) -> complex:
    """Closed-form symbol of a generator on the diagonal; exact at every N."""
    if name in ("K0", "K1", "K2"):
        return matrix_element_closed(name, tau, tau, k)
    if name == "A":
        return diagonal_symbol("K0", tau, k) + diagonal_symbol("K2", tau, k)
    if name == "B":
        return 2.0 * diagonal_symbol("K1", tau, k)
    if name == "C":
        return diagonal_symbol("K0", tau, k) - diagonal_symbol("K2", tau, k)
    raise ValueError(f"unknown symbol name {name!r}")


def identity_resolution_check(
    rep: RepParams,
    max_n: int,
    quadrature: QuadratureParams = QuadratureParams(),
) -> float:
    """Largest deviation of the completeness integral from the identity.

    The angular integral kills every off-diagonal element exactly, so
    only the radial integrals in x = |tau|^2 remain:

        (2J - 1) * Integral_0^1 (1-x)^(2J-2) * G_n * x^n dx  ->  1

    with G_n = Gamma(2J+n)/(n! Gamma(2J)).  They are evaluated by
    Gauss-Legendre quadrature of the requested order; a deviation above
    any threshold is a result for the caller to judge, not an error.
    """
    j = rep.j
    if not j > 0.5:
        raise DomainError(f"resolution of identity requires J > 1/2, got J={j}")
    if max_n > rep.cutoff:
        raise ValueError(f"max_n={max_n} exceeds cutoff {rep.cutoff}")
    if max_n < 0:
        raise ValueError(f"max_n must be >= 0, got {max_n}")
    nodes, weights = np.polynomial.legendre.leggauss(quadrature.order)
    x = 0.5 * (nodes + 1.0)
    w = 0.5 * weights
    log_x = np.log(x)
    log_one_minus_x = np.log1p(-x)
    worst = 0.0
    for n in range(max_n + 1):
        log_g = gammaln(2.0 * j + n) - gammaln(n + 1.0) - gammaln(2.0 * j)
        integrand = np.exp((2.0 * j - 2.0) * log_one_minus_x + log_g + n * log_x)
        value = (2.0 * j - 1.0) * float(np.sum(w * integrand))
        worst = max(worst, abs(value - 1.0))
    return worst
