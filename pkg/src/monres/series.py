"""series.py - exact polynomials and rational functions in z, and Poincaré series formulas.

Rational functions are kept in two shapes. ``numerator``/``denominator`` is the
canonical reduced pair (no common factor, content 1, positive constant term in
the denominator) and is the only thing equality looks at. ``display`` keeps the
pair as a formula produced it, e.g. ``(1+z)^3 / (1 - 3*z^2 - 2*z^3)``, which is
how the results are usually quoted.

The closed form for complete intersections is (1+z)^n/(1-z^2)^t. A numerator
of (1-z)^n is sometimes printed for it, but A/(x^2) has P = (1+z)/(1-z^2), so
the (1+z) numerator is the one implemented.
"""
from dataclasses import dataclass, field
from functools import reduce
from math import comb, gcd
from typing import List, Optional, Sequence, Tuple

import sympy
from structlog import get_logger
from sympy import Poly
from typeguard import typechecked

from .errors import NotTaylorMinimalError, ParameterError
from .koszul import BigradedPolynomial, homology_hilbert_series
from .monomial import MonomialIdeal, power_ideal, reduce_ring
from .taylor import is_taylor_minimal

log = get_logger()

Z = sympy.Symbol("z")


@dataclass(frozen=True)
class IntPolynomial:
    """Integer polynomial in z; ``coefficients[k]`` multiplies z^k, no trailing zeros."""

    coefficients: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        coeffs = list(self.coefficients)
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        object.__setattr__(self, "coefficients", tuple(int(c) for c in coeffs))

    @classmethod
    def constant(cls, c: int) -> "IntPolynomial":
        return cls((c,))

    @classmethod
    def one_plus_z(cls, power: int = 1) -> "IntPolynomial":
        return cls(tuple(comb(power, k) for k in range(power + 1)))

    @classmethod
    def from_poly(cls, poly: Poly) -> "IntPolynomial":
        return cls(tuple(int(c) for c in reversed(poly.all_coeffs())))

    def to_poly(self) -> Poly:
        return Poly(list(reversed(self.coefficients)) or [0], Z, domain="ZZ")

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def is_zero(self) -> bool:
        return not self.coefficients

    def coefficient(self, k: int) -> int:
        return self.coefficients[k] if 0 <= k < len(self.coefficients) else 0

    def evaluate(self, z: int) -> int:
        return sum(c * z**k for k, c in enumerate(self.coefficients))

    def __add__(self, other: "IntPolynomial") -> "IntPolynomial":
        size = max(len(self.coefficients), len(other.coefficients))
        return IntPolynomial(tuple(self.coefficient(k) + other.coefficient(k) for k in range(size)))

    def __neg__(self) -> "IntPolynomial":
        return IntPolynomial(tuple(-c for c in self.coefficients))

    def __sub__(self, other: "IntPolynomial") -> "IntPolynomial":
        return self + (-other)

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial.from_poly(self.to_poly() * other.to_poly())

    def __pow__(self, k: int) -> "IntPolynomial":
        return IntPolynomial.from_poly(self.to_poly() ** k)

    def one_plus_z_multiplicity(self) -> Tuple[int, "IntPolynomial"]:
        """Largest k with (1+z)^k dividing the polynomial, and the cofactor."""
        if self.is_zero():
            return 0, self
        poly = self.to_poly()
        base = Poly(Z + 1, Z, domain="ZZ")
        k = 0
        while True:
            quotient, remainder = poly.div(base)
            if not remainder.is_zero:
                return k, IntPolynomial.from_poly(poly)
            poly = quotient
            k += 1

    def format(self, var: str = "z") -> str:
        """Ascending expanded form, e.g. ``1 - 3*z^2 - 2*z^3``."""
        if self.is_zero():
            return "0"
        parts: List[str] = []
        for k, c in enumerate(self.coefficients):
            if c == 0:
                continue
            power = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
            magnitude = abs(c)
            if k == 0:
                body = str(magnitude)
            elif magnitude == 1:
                body = power
            else:
                body = f"{magnitude}*{power}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __str__(self) -> str:
        return self.format()


def _wrap(poly: IntPolynomial) -> str:
    text = poly.format()
    return f"({text})" if sum(1 for c in poly.coefficients if c) > 1 else text


def format_factored(poly: IntPolynomial) -> str:
    """Pull out (1+z)^k when it divides, e.g. ``(1+z)^3`` or ``(1+z)^2*(1 - z)``."""
    k, cofactor = poly.one_plus_z_multiplicity()
    if k == 0:
        return _wrap(poly)
    factor = "(1+z)" if k == 1 else f"(1+z)^{k}"
    if cofactor.coefficients == (1,):
        return factor
    return f"{factor}*{_wrap(cofactor)}"


@dataclass(frozen=True)
class RationalSeries:
    """A power series given as numerator/denominator in canonical reduced form."""

    numerator: IntPolynomial
    denominator: IntPolynomial
    display: Optional[Tuple[IntPolynomial, IntPolynomial]] = field(
        default=None, compare=False, repr=False
    )

    @classmethod
    def normalized(
        cls,
        numerator: IntPolynomial,
        denominator: IntPolynomial,
        display: Optional[Tuple[IntPolynomial, IntPolynomial]] = None,
    ) -> "RationalSeries":
        if denominator.is_zero():
            raise ParameterError("zero denominator")
        shown = display if display is not None else (numerator, denominator)
        if numerator.is_zero():
            return cls(IntPolynomial(), IntPolynomial.constant(1), shown)
        p, q = numerator.to_poly(), denominator.to_poly()
        common = p.gcd(q)
        p, q = p.exquo(common), q.exquo(common)
        num, den = IntPolynomial.from_poly(p), IntPolynomial.from_poly(q)
        content = reduce(gcd, num.coefficients + den.coefficients)
        num = IntPolynomial(tuple(c // content for c in num.coefficients))
        den = IntPolynomial(tuple(c // content for c in den.coefficients))
        if den.coefficient(0) == 0:
            raise ParameterError("denominator vanishes at z = 0; not a power series")
        if den.coefficient(0) < 0:
            num, den = -num, -den
        return cls(num, den, shown)

    @classmethod
    def polynomial(cls, poly: IntPolynomial) -> "RationalSeries":
        return cls.normalized(poly, IntPolynomial.constant(1))

    def shown(self) -> Tuple[IntPolynomial, IntPolynomial]:
        """The display pair, falling back to the reduced one."""
        return self.display if self.display is not None else (self.numerator, self.denominator)

    def format(self, reduced: bool = False) -> str:
        num, den = (self.numerator, self.denominator) if reduced else self.shown()
        top = format_factored(num)
        if den.coefficients == (1,):
            return top
        return f"{top} / {_wrap(den)}"

    def __str__(self) -> str:
        return self.format()

    def __mul__(self, other: "RationalSeries") -> "RationalSeries":
        return multiply(self, other)


@typechecked
def substitute_bigraded(hilbert: BigradedPolynomial) -> IntPolynomial:
    """Hilb(H)(-z, z): c*X^a*Y^b becomes c*(-1)^a*z^(a+b)."""
    coeffs = [0] * (hilbert.total_degree() + 1)
    for (a, b), c in hilbert.terms():
        coeffs[a + b] += -c if a % 2 else c
    return IntPolynomial(tuple(coeffs))


def _require_minimal(ideal: MonomialIdeal) -> None:
    result = is_taylor_minimal(ideal)
    if not result:
        raise NotTaylorMinimalError(
            f"the Taylor resolution of {ideal} is not minimal "
            f"(generator {result.witness.index} divides the lcm of the others)",
            result.witness,
        )


@typechecked
def poincare_minimal_taylor(ideal: MonomialIdeal) -> RationalSeries:
    """(1+z)^n / Hilb(H(K^R))(-z, z) for an ideal with minimal Taylor resolution.

    Linear generators are removed first (they do not change P), and n is the
    number of variables the remaining generators use. Variables outside the
    support are not counted; ``poincare_series`` adds their (1+z) factors.
    """
    _require_minimal(ideal)
    reduced = reduce_ring(ideal).ideal
    numerator = IntPolynomial.one_plus_z(reduced.n)
    denominator = substitute_bigraded(homology_hilbert_series(reduced))
    series = RationalSeries.normalized(numerator, denominator)
    log.debug("minimal taylor poincare series", ideal=str(ideal), series=series.format())
    return series


@typechecked
def poincare_complete_intersection(n: int, t: int) -> RationalSeries:
    """(1+z)^n / (1-z^2)^t for t pairwise coprime generators in n variables."""
    if t < 0 or n < 0:
        raise ParameterError("n and t must be nonnegative")
    if t > n:
        raise ParameterError(f"a complete intersection has at most n = {n} generators, got t = {t}")
    denominator = IntPolynomial((1, 0, -1)) ** t
    return RationalSeries.normalized(IntPolynomial.one_plus_z(n), denominator)


@typechecked
def poincare_trivially_golod(n: int, t: int) -> RationalSeries:
    """(1+z)^n / (1 - sum_{i=1..t} C(t,i) z^(i+1)) for generators with a common factor."""
    if n < 1 or t < 1:
        raise ParameterError("a trivially Golod ring needs n >= 1 and t >= 1")
    coeffs = [1, 0] + [-comb(t, i) for i in range(1, t + 1)]
    return RationalSeries.normalized(IntPolynomial.one_plus_z(n), IntPolynomial(tuple(coeffs)))


@typechecked
def expand(series: RationalSeries, order: int) -> List[int]:
    """Power-series coefficients through z^order via the denominator's recurrence."""
    if order < 0:
        return []
    q = series.denominator.coefficients
    q0 = q[0]
    if q0 == 0:
        raise ParameterError("denominator constant term must be nonzero")
    out: List[int] = []
    for k in range(order + 1):
        acc = series.numerator.coefficient(k)
        for j in range(1, min(k, len(q) - 1) + 1):
            acc -= q[j] * out[k - j]
        if acc % q0:
            raise ParameterError("series does not have integer coefficients")
        out.append(acc // q0)
    return out


@typechecked
def multiply(a: RationalSeries, b: RationalSeries) -> RationalSeries:
    """Product of two series; the display forms are multiplied unreduced."""
    (an, ad), (bn, bd) = a.shown(), b.shown()
    return RationalSeries.normalized(an * bn, ad * bd)


def product(factors: Sequence[RationalSeries]) -> RationalSeries:
    return reduce(multiply, factors, RationalSeries.polynomial(IntPolynomial.constant(1)))


@dataclass(frozen=True)
class PoincareResult:
    """P_k^R for the whole ring, with the reduction steps that led to it."""

    series: RationalSeries
    core: RationalSeries
    unused_dropped: int
    linear_dropped: int


@typechecked
def poincare_series(ideal: MonomialIdeal) -> PoincareResult:
    """P_k^R of A/I over all of A.

    Unused variables contribute (1+z) each, linear generators nothing, and the
    reduced ideal goes through the minimal-Taylor formula. The closed forms for
    complete intersections and trivially Golod rings are special cases of that
    formula and are used as cross-checks, not as separate routes.
    """
    _require_minimal(ideal)
    reduction = reduce_ring(ideal)
    core = poincare_minimal_taylor(reduction.ideal)
    factor = RationalSeries.polynomial(IntPolynomial.one_plus_z(reduction.unused_dropped))
    series = multiply(factor, core)
    return PoincareResult(series, core, reduction.unused_dropped, reduction.linear_dropped)


@typechecked
def poincare_series_powered(ideal: MonomialIdeal, q: int) -> RationalSeries:
    """P_k^R for the q-th power of the part of I inside m_A^2.

    Powering only preserves P for ideals in m_A^2, so linear generators are
    dropped with their variables before the generators are raised to the q-th
    power; unused variables contribute (1+z) as in ``poincare_series``.
    """
    reduction = reduce_ring(ideal)
    powered = poincare_minimal_taylor(power_ideal(reduction.ideal, q))
    factor = RationalSeries.polynomial(IntPolynomial.one_plus_z(reduction.unused_dropped))
    return multiply(factor, powered)
