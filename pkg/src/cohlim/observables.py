"""Classical observables on the (v, w) half-plane.

A PhaseObservable is an exact Laurent polynomial in the canonical pair
(v, w): non-negative powers of v, integer powers of w.  The basic
invariants take the closed forms A = w, B = 2vw, C = v^2 w + k^2/w, and
the bracket {f, g} = df/dv dg/dw - dg/dv df/dw closes on this family.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

BASIC_SYMBOL_NAMES = ("A", "B", "C", "K0", "K1", "K2", "Casimir")


@dataclass(frozen=True)
class PhaseObservable:
    """Laurent polynomial sum of coeff * v^a * w^b with a >= 0, b integer."""

    terms: dict[tuple[int, int], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[tuple[int, int], float] = {}
        for (a, b), coeff in self.terms.items():
            if a < 0:
                raise ValueError(f"negative power of v in term {(a, b)}")
            if coeff != 0.0:
                clean[(int(a), int(b))] = float(coeff)
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def constant(value: float) -> "PhaseObservable":
        return PhaseObservable({(0, 0): value})

    @staticmethod
    def zero() -> "PhaseObservable":
        return PhaseObservable({})

    def __add__(self, other: "PhaseObservable") -> "PhaseObservable":
        terms = dict(self.terms)
        for key, coeff in other.terms.items():
            terms[key] = terms.get(key, 0.0) + coeff
        return PhaseObservable(terms)

    def __sub__(self, other: "PhaseObservable") -> "PhaseObservable":
        return self + (-1.0) * other

    def __mul__(self, scalar: float) -> "PhaseObservable":
        return PhaseObservable({key: scalar * coeff for key, coeff in self.terms.items()})

    __rmul__ = __mul__

    def __neg__(self) -> "PhaseObservable":
        return self * -1.0

    def product(self, other: "PhaseObservable") -> "PhaseObservable":
        terms: dict[tuple[int, int], float] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                key = (a1 + a2, b1 + b2)
                terms[key] = terms.get(key, 0.0) + c1 * c2
        return PhaseObservable(terms)

    def power(self, exponent: int) -> "PhaseObservable":
        if exponent < 0:
            raise ValueError("negative powers of observables are not defined")
        result = PhaseObservable.constant(1.0)
        for _ in range(exponent):
            result = result.product(self)
        return result

    def d_dv(self) -> "PhaseObservable":
        return PhaseObservable(
            {(a - 1, b): a * c for (a, b), c in self.terms.items() if a > 0}
        )

    def d_dw(self) -> "PhaseObservable":
        return PhaseObservable(
            {(a, b - 1): b * c for (a, b), c in self.terms.items() if b != 0}
        )

    def is_zero(self, tol: float = 0.0) -> bool:
        return all(abs(c) <= tol for c in self.terms.values())


def poisson_bracket(f: PhaseObservable, g: PhaseObservable) -> PhaseObservable:
    """{f, g} = df/dv dg/dw - dg/dv df/dw, exact on Laurent polynomials."""
    return f.d_dv().product(g.d_dw()) - g.d_dv().product(f.d_dw())


def evaluate(f: PhaseObservable, v: float, w: float) -> float:
    """Numeric value of f at (v, w); w must be positive."""
    if not w > 0:
        raise ValueError(f"w must be > 0, got {w}")
    total = 0.0
    for (a, b), coeff in sorted(f.terms.items()):
        total += coeff * v**a * w ** float(b)
    return total


def basic_symbol(name: str, k: float) -> PhaseObservable:
    """Coherent-state symbol of a basic invariant in (v, w) coordinates.

    A -> w, B -> 2vw, C -> v^2 w + k^2/w; the K's follow by the linear
    relations K0 = (A+C)/2, K1 = B/2, K2 = (A-C)/2, and the Casimir
    symbol is the constant k^2 reached in the large-N limit.
    """
    if not k > 0:
        raise ValueError(f"k must be > 0, got {k}")
    if name == "A":
        return PhaseObservable({(0, 1): 1.0})
    if name == "B":
        return PhaseObservable({(1, 1): 2.0})
    if name == "C":
        return PhaseObservable({(2, 1): 1.0, (0, -1): k * k})
    if name == "K0":
        return 0.5 * (basic_symbol("A", k) + basic_symbol("C", k))
    if name == "K1":
        return 0.5 * basic_symbol("B", k)
    if name == "K2":
        return 0.5 * (basic_symbol("A", k) - basic_symbol("C", k))
    if name == "Casimir":
        return PhaseObservable.constant(k * k)
    raise ValueError(f"unknown symbol {name!r}; expected one of {BASIC_SYMBOL_NAMES}")


@dataclass(frozen=True)
class HamiltonianPolynomial:
    """Polynomial h in the invariants (A, B, C) with N-independent real
    coefficients, keyed by exponent triple (a, b, c)."""

    terms: dict[tuple[int, int, int], float] = field(default_factory=dict)

    def __post_init__(self) -> None:
        clean: dict[tuple[int, int, int], float] = {}
        for (a, b, c), coeff in self.terms.items():
            if a < 0 or b < 0 or c < 0:
                raise ValueError(f"negative exponent in term {(a, b, c)}")
            if coeff != 0.0:
                clean[(int(a), int(b), int(c))] = float(coeff)
        object.__setattr__(self, "terms", clean)

    @staticmethod
    def zero() -> "HamiltonianPolynomial":
        return HamiltonianPolynomial({})

    def degree(self) -> int:
        if not self.terms:
            return 0
        return max(a + b + c for (a, b, c) in self.terms)


_MONOMIAL_FACTOR = re.compile(r"^([ABC])(?:\^(\d+))?$")


def parse_hamiltonian(text: str) -> HamiltonianPolynomial:
    """Parse expressions like "C", "A^2", "C + 0.5*A^2", "2*A*B - C^3".

    Terms are separated by + and -; each term is a product of an
    optional leading numeric coefficient and factors A, B, C with
    optional integer carets.  Division by a trailing integer is allowed
    (e.g. "A^2/2").
    """
    stripped = text.replace(" ", "")
    if not stripped:
        raise ValueError("empty Hamiltonian expression")
    if stripped in ("0", "0.0"):
        return HamiltonianPolynomial.zero()
    # split on signs not inside exponents (expressions carry no parens)
    chunks = re.findall(r"[+-]?[^+-]+", stripped)
    terms: dict[tuple[int, int, int], float] = {}
    for chunk in chunks:
        sign = 1.0
        body = chunk
        if body[0] in "+-":
            sign = -1.0 if body[0] == "-" else 1.0
            body = body[1:]
        if not body:
            raise ValueError(f"dangling sign in {text!r}")
        divisor = 1.0
        if "/" in body:
            body, div_text = body.rsplit("/", 1)
            try:
                divisor = float(div_text)
            except ValueError as exc:
                raise ValueError(f"bad divisor in term {chunk!r}") from exc
            if divisor == 0.0:
                raise ValueError(f"division by zero in term {chunk!r}")
        coeff = sign
        exponents = {"A": 0, "B": 0, "C": 0}
        for factor in body.split("*"):
            if not factor:
                raise ValueError(f"empty factor in term {chunk!r}")
            match = _MONOMIAL_FACTOR.match(factor)
            if match:
                letter, power = match.groups()
                exponents[letter] += int(power) if power else 1
                continue
            try:
                coeff *= float(factor)
            except ValueError as exc:
                raise ValueError(f"unrecognized factor {factor!r} in {text!r}") from exc
        key = (exponents["A"], exponents["B"], exponents["C"])
        terms[key] = terms.get(key, 0.0) + coeff / divisor
    return HamiltonianPolynomial(terms)


def format_hamiltonian(h: HamiltonianPolynomial) -> str:
    if not h.terms:
        return "0"
    parts = []
    for (a, b, c), coeff in sorted(h.terms.items()):
        factors = []
        for letter, power in zip("ABC", (a, b, c)):
            if power == 1:
                factors.append(letter)
            elif power > 1:
                factors.append(f"{letter}^{power}")
        if not factors:
            parts.append(f"{coeff:g}")
        elif coeff == 1.0:
            parts.append("*".join(factors))
        else:
            parts.append(f"{coeff:g}*" + "*".join(factors))
    return " + ".join(parts)
