"""Coordinate charts on the pseudosphere and its half-plane image.

Six charts describe the same geometric point: the displacement label xi,
the projective labels zeta and tau (|tau| < 1), polar (rho, phi), the
half-plane pair (varrho, v) with z = varrho - i*v = (i + tau)/(i - tau),
and the canonical pair (v, w) with w = k/varrho.  Tau is the hub chart;
every conversion routes through it.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

CHART_NAMES = ("Xi", "Zeta", "Tau", "Polar", "HalfPlane", "Canonical")


class DomainError(ValueError):
    """Coordinates outside the chart's domain."""


@dataclass(frozen=True)
class ChartPoint:
    """A phase-space point in one named chart.

    coords holds (Re, Im) for the complex charts Xi/Zeta/Tau,
    (rho, phi) for Polar, (varrho, v) for HalfPlane and (v, w) for
    Canonical.
    """

    chart: str
    coords: tuple[float, float]

    def __post_init__(self) -> None:
        if self.chart not in CHART_NAMES:
            raise ValueError(f"unknown chart {self.chart!r}; expected one of {CHART_NAMES}")
        coords = (float(self.coords[0]), float(self.coords[1]))
        object.__setattr__(self, "coords", coords)
        validate_point(self)

    @property
    def as_complex(self) -> complex:
        if self.chart not in ("Xi", "Zeta", "Tau"):
            raise ValueError(f"chart {self.chart} is not a complex chart")
        return complex(self.coords[0], self.coords[1])


def validate_point(p: ChartPoint) -> None:
    c1, c2 = p.coords
    if p.chart == "Tau" and math.hypot(c1, c2) >= 1.0:
        raise DomainError("tau modulus must be < 1")
    if p.chart == "Polar":
        if c1 < 0.0:
            raise DomainError("polar radius must be >= 0")
        if not (0.0 <= c2 < 2.0 * math.pi):
            raise DomainError("polar angle must lie in [0, 2*pi)")
    if p.chart == "HalfPlane" and not c1 > 0.0:
        raise DomainError("half-plane coordinate must satisfy varrho > 0")
    if p.chart == "Canonical" and not c2 > 0.0:
        raise DomainError("canonical coordinate must satisfy w > 0")


def tau_point(tau: complex) -> ChartPoint:
    return ChartPoint("Tau", (tau.real, tau.imag))


def _to_tau(p: ChartPoint, k: float | None) -> complex:
    c1, c2 = p.coords
    if p.chart == "Tau":
        return complex(c1, c2)
    if p.chart == "Xi":
        # xi enters only through rho = 2|xi|, phi = -arg(i*xi)
        xi = complex(c1, c2)
        rho = 2.0 * abs(xi)
        phi = -cmath.phase(1j * xi) if xi != 0 else 0.0
        return math.tanh(rho / 2.0) * cmath.exp(-1j * phi)
    if p.chart == "Zeta":
        zeta = complex(c1, c2)
        return zeta / math.sqrt(1.0 + abs(zeta) ** 2)
    if p.chart == "Polar":
        rho, phi = c1, c2
        return math.tanh(rho / 2.0) * cmath.exp(-1j * phi)
    if p.chart == "HalfPlane":
        z = complex(c1, -c2)
        return 1j * (z - 1.0) / (z + 1.0)
    # Canonical: (v, w) -> half plane via varrho = k/w
    if k is None:
        raise ValueError("k is required to convert from the Canonical chart")
    v, w = c1, c2
    z = complex(k / w, -v)
    return 1j * (z - 1.0) / (z + 1.0)


def _from_tau(tau: complex, target: str, k: float | None) -> ChartPoint:
    if abs(tau) >= 1.0:
        raise DomainError("tau modulus must be < 1")
    if target == "Tau":
        return tau_point(tau)
    if target == "Zeta":
        zeta = tau / math.sqrt(1.0 - abs(tau) ** 2)
        return ChartPoint("Zeta", (zeta.real, zeta.imag))
    if target == "Polar":
        rho = 2.0 * math.atanh(abs(tau))
        phi = (-cmath.phase(tau)) % (2.0 * math.pi) if tau != 0 else 0.0
        return ChartPoint("Polar", (rho, phi))
    if target in ("HalfPlane", "Canonical"):
        z = (1j + tau) / (1j - tau)
        varrho, v = z.real, -z.imag
        if target == "HalfPlane":
            return ChartPoint("HalfPlane", (varrho, v))
        if k is None:
            raise ValueError("k is required to convert to the Canonical chart")
        return ChartPoint("Canonical", (v, k / varrho))
    if target == "Xi":
        raise ValueError("the Xi chart is input-only")
    raise ValueError(f"unknown chart {target!r}; expected one of {CHART_NAMES}")


def convert(p: ChartPoint, target: str, k: float | None = None) -> ChartPoint:
    """Re-express a point in another chart, routing through Tau.

    k is the positive index entering w = k/varrho; it is required
    exactly when Canonical is the source or the target chart.
    """
    if k is not None and not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    if p.chart == target:
        return p
    return _from_tau(_to_tau(p, k), target, k)


def metric_coefficient(p: ChartPoint, k: float) -> float:
    """Natural metric coefficient at p for index k.

    In the Tau chart the line element is g |dtau|^2 with
    g = 2k/(1 - |tau|^2)^2; on the half plane it is conformal,
    (R^2/varrho^2)(dvarrho^2 + dv^2) with R^2 = k/2.
    """
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    if p.chart == "Tau":
        x = abs(p.as_complex) ** 2
        return 2.0 * k / (1.0 - x) ** 2
    if p.chart == "HalfPlane":
        varrho = p.coords[0]
        return (k / 2.0) / varrho**2
    raise ValueError(f"metric is only provided in the Tau and HalfPlane charts, not {p.chart}")


def measure_density(tau: complex, j: float) -> float:
    """Density of the invariant measure with respect to d(Re tau) d(Im tau).

    The normalization (2J - 1)/pi makes the family of index-J states
    resolve the identity; it exists only for J > 1/2.
    """
    if abs(tau) >= 1.0:
        raise DomainError("tau modulus must be < 1")
    if not j > 0.5:
        raise DomainError(f"measure requires J > 1/2, got J={j}")
    return (2.0 * j - 1.0) / math.pi / (1.0 - abs(tau) ** 2) ** 2


def log_normalization(tau: complex, k: float) -> float:
    """F(tau, tau*) = -2k log(1 - |tau|^2), the Kaehler potential whose
    mixed second derivative reproduces the Tau-chart metric."""
    x = abs(tau) ** 2
    if x >= 1.0:
        raise DomainError("tau modulus must be < 1")
    return -2.0 * k * math.log1p(-x)


def zeta_from_xi(xi: complex, compact: bool = False) -> complex:
    """Printed branch formulas zeta = xi * sin(|xi|)/|xi| (compact) or
    xi * sinh(|xi|)/|xi| (noncompact); kept as bare coordinate maps."""
    r = abs(xi)
    if r == 0.0:
        return 0j
    return xi * (math.sin(r) if compact else math.sinh(r)) / r


def tau_from_zeta(zeta: complex, compact: bool = False) -> complex:
    """Projective coordinate tau = zeta (1 -+ |zeta|^2)^(-1/2); the
    compact branch requires |zeta| < 1."""
    x = abs(zeta) ** 2
    if compact:
        if x >= 1.0:
            raise DomainError("compact branch requires |zeta| < 1")
        return zeta / math.sqrt(1.0 - x)
    return zeta / math.sqrt(1.0 + x)
