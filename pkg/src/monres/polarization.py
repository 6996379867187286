"""polarization.py - squarefree polarization of monomial ideals."""
from dataclasses import dataclass
from typing import Dict, List, Tuple

from structlog import get_logger
from typeguard import typechecked

from .errors import ParameterError
from .monomial import Monomial, MonomialIdeal
from .series import IntPolynomial, RationalSeries, poincare_minimal_taylor
from .taylor import is_taylor_minimal

log = get_logger()


@dataclass(frozen=True)
class ExponentProfile:
    """I(x_i): the largest power of x_i dividing some generator; N is their sum."""

    maxima: Tuple[int, ...]

    @property
    def total(self) -> int:
        return sum(self.maxima)


@dataclass(frozen=True)
class Polarization:
    """Squarefree ideal in N variables; ``slots[i]`` lists the target variables (0-based) of x_i."""

    source: MonomialIdeal
    target: MonomialIdeal
    slots: Tuple[Tuple[int, ...], ...]

    @property
    def extra_variables(self) -> int:
        """N - n, the length of the linear regular sequence."""
        return self.target.n - self.source.n

    def slot_map(self) -> Dict[str, List[str]]:
        return {
            name: [self.target.variables[k] for k in block]
            for name, block in zip(self.source.variables, self.slots)
        }


@typechecked
def exponent_profile(ideal: MonomialIdeal) -> ExponentProfile:
    maxima = [0] * ideal.n
    for m in ideal.generators:
        maxima = [max(a, b) for a, b in zip(maxima, m.exponents)]
    return ExponentProfile(tuple(maxima))


@typechecked
def polarize(ideal: MonomialIdeal) -> Polarization:
    """Replace x_i^a by the product of the first a slots of x_i.

    Slots are handed out in variable order, so x_1 gets y_1..y_{I(x_1)}, and
    so on; target variables are named y1..yN.
    """
    profile = exponent_profile(ideal)
    slots: List[Tuple[int, ...]] = []
    start = 0
    for size in profile.maxima:
        slots.append(tuple(range(start, start + size)))
        start += size
    total = profile.total
    names = tuple(f"y{k + 1}" for k in range(total))
    gens = []
    for m in ideal.generators:
        exps = [0] * total
        for block, e in zip(slots, m.exponents):
            for k in block[:e]:
                exps[k] = 1
        gens.append(Monomial(tuple(exps)))
    target = MonomialIdeal(names, tuple(gens)) if total else MonomialIdeal((), ())
    log.debug("polarized", n=ideal.n, N=total)
    return Polarization(ideal, target, tuple(slots))


@typechecked
def poincare_depolarize(series: RationalSeries, big_n: int, n: int) -> RationalSeries:
    """P^S / (1+z)^(N-n)."""
    if big_n < n:
        raise ParameterError(f"N = {big_n} is smaller than n = {n}")
    return RationalSeries.normalized(
        series.numerator, series.denominator * IntPolynomial.one_plus_z(big_n - n)
    )


@dataclass(frozen=True)
class DepolarizationCheck:
    direct: RationalSeries
    via_polarization: RationalSeries
    source_minimal: bool
    target_minimal: bool

    @property
    def agrees(self) -> bool:
        return self.direct == self.via_polarization

    @property
    def minimality_preserved(self) -> bool:
        return self.source_minimal == self.target_minimal


@typechecked
def depolarize_check(ideal: MonomialIdeal) -> DepolarizationCheck:
    """Compare P^R with P^S/(1+z)^(N-n), S the polarized ring.

    Both sides go through the minimal-Taylor formula over the variables the
    generators use, so the ideal and its polarization must both have minimal
    Taylor resolutions.
    """
    pol = polarize(ideal)
    source_minimal = bool(is_taylor_minimal(ideal))
    target_minimal = bool(is_taylor_minimal(pol.target))
    direct = poincare_minimal_taylor(ideal)
    lifted = poincare_minimal_taylor(pol.target)
    via = poincare_depolarize(lifted, pol.target.n, len(ideal.used_variables()))
    return DepolarizationCheck(direct, via, source_minimal, target_minimal)
