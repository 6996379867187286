"""classification.py - complete intersection, trivially Golod and related structure tests."""
from dataclasses import dataclass, field
from enum import Enum
from itertools import combinations_with_replacement, permutations
from typing import List, Optional, Sequence, Tuple

from structlog import get_logger
from typeguard import typechecked

from .errors import DecompositionError, NotTaylorMinimalError, ParameterError
from .koszul import CoprimalityGraph, coprimality_graph
from .monomial import Monomial, MonomialIdeal, gcd_all
from .series import (
    RationalSeries,
    poincare_complete_intersection,
    poincare_trivially_golod,
    product,
)
from .taylor import is_taylor_minimal

log = get_logger()

PERMUTATION_SEARCH_LIMIT = 8


class Verdict(str, Enum):
    """Structure read off a generator shape."""

    COMPLETE_INTERSECTION = "complete-intersection"
    TRIVIALLY_GOLOD = "trivially-golod"
    UNDETERMINED = "undetermined"


@dataclass(frozen=True)
class GolodWitness:
    holds: bool
    common_factor: Optional[Monomial] = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class StableForm:
    """m_i = x_i * prod_{j<=i} x_j^{n_j} with one shared exponent vector."""

    exponents: Tuple[int, ...]

    @property
    def verdict(self) -> Verdict:
        if self.exponents and self.exponents[0] > 0:
            return Verdict.TRIVIALLY_GOLOD
        if not any(self.exponents):
            return Verdict.COMPLETE_INTERSECTION
        return Verdict.UNDETERMINED


@dataclass(frozen=True)
class LinearForm:
    """m_i = u * x_{j_i}; ``variables`` holds the 0-based j_i."""

    u: Monomial
    variables: Tuple[int, ...]

    @property
    def verdict(self) -> Verdict:
        return Verdict.COMPLETE_INTERSECTION if self.u.is_one() else Verdict.TRIVIALLY_GOLOD


@dataclass(frozen=True)
class TensorFactor:
    generator_indices: Tuple[int, ...]
    ideal: MonomialIdeal
    verdict: Verdict
    common_variable: Optional[str] = None

    def poincare(self) -> RationalSeries:
        if self.verdict == Verdict.COMPLETE_INTERSECTION:
            return poincare_complete_intersection(self.ideal.n, self.ideal.t)
        return poincare_trivially_golod(self.ideal.n, self.ideal.t)


@dataclass(frozen=True)
class WindowStructure:
    """An ordering under which the coprimality graph is the band |i-j| <= d-1."""

    ordering: Tuple[int, ...]
    d: int
    window_gcd_d: bool
    window_gcd_d_plus_one: bool

    def implied_verdict(self, t: int) -> Verdict:
        if self.d == 1:
            return Verdict.COMPLETE_INTERSECTION
        if self.d == t and self.window_gcd_d:
            return Verdict.TRIVIALLY_GOLOD
        return Verdict.UNDETERMINED


@dataclass(frozen=True)
class ClassificationReport:
    is_complete_intersection: bool
    trivially_golod: GolodWitness
    stable: bool
    stable_minimal_taylor_form: Optional[StableForm]
    linear_resolution_form: Optional[LinearForm]
    tensor_factors: Tuple[TensorFactor, ...] = ()
    d_window: Optional[WindowStructure] = None
    notes: Tuple[str, ...] = field(default=())


@typechecked
def is_complete_intersection(ideal: MonomialIdeal) -> bool:
    """Pairwise coprime generators."""
    return coprimality_graph(ideal).is_empty()


@typechecked
def is_trivially_golod(ideal: MonomialIdeal) -> GolodWitness:
    if ideal.t == 0:
        raise ParameterError("the zero ideal has no generators to share a factor")
    common = gcd_all(list(ideal.generators))
    return GolodWitness(not common.is_one(), None if common.is_one() else common)


def _monomials_up_to(n: int, degree: int) -> List[Monomial]:
    out = []
    for d in range(degree + 1):
        for combo in combinations_with_replacement(range(n), d):
            exps = [0] * n
            for j in combo:
                exps[j] += 1
            out.append(Monomial(tuple(exps)))
    return out


def _exchange_holds(ideal: MonomialIdeal, m: Monomial) -> bool:
    support = m.support()
    if not support:
        return True
    top = support[-1]
    for i in range(top):
        exps = list(m.exponents)
        exps[top] -= 1
        exps[i] += 1
        if not ideal.contains(Monomial(tuple(exps))):
            return False
    return True


@typechecked
def is_stable(ideal: MonomialIdeal) -> bool:
    """x_i * m / x_{max Supp(m)} stays in I for every i below max Supp(m).

    Checked on the generators and on every monomial of I up to the largest
    generator degree.
    """
    if not all(_exchange_holds(ideal, m) for m in ideal.generators):
        return False
    if ideal.n == 0:
        return True
    for m in _monomials_up_to(ideal.n, ideal.max_degree()):
        if ideal.contains(m) and not _exchange_holds(ideal, m):
            return False
    return True


@typechecked
def stable_minimal_taylor_form(ideal: MonomialIdeal) -> Optional[StableForm]:
    """The shared exponents (n_1, ..., n_t) of m_i = x_i * prod_{j<=i} x_j^{n_j}, if any."""
    t = ideal.t
    if t == 0 or t > ideal.n:
        return None
    shared: List[int] = []
    for i, m in enumerate(ideal.generators):
        exps = m.exponents
        if exps[i] < 1 or any(exps[j] for j in range(i + 1, ideal.n)):
            return None
        if any(exps[j] != shared[j] for j in range(i)):
            return None
        shared.append(exps[i] - 1)
    return StableForm(tuple(shared))


@typechecked
def linear_resolution_form(ideal: MonomialIdeal) -> Optional[LinearForm]:
    if ideal.t == 0:
        return None
    u = gcd_all(list(ideal.generators))
    variables = []
    for m in ideal.generators:
        quotient = m / u
        if quotient.degree != 1:
            return None
        variables.append(quotient.support()[0])
    return LinearForm(u, tuple(variables))


@typechecked
def quadratic_tensor_decomposition(ideal: MonomialIdeal) -> Tuple[TensorFactor, ...]:
    """Split a quadratic minimal-Taylor ideal along the components of its coprimality graph.

    Each non-principal component must share one variable; that is checked,
    not assumed.
    """
    if any(m.degree != 2 for m in ideal.generators):
        raise ParameterError("tensor decomposition needs every generator to be quadratic")
    minimal = is_taylor_minimal(ideal)
    if not minimal:
        raise NotTaylorMinimalError(
            "tensor decomposition needs a minimal Taylor resolution", minimal.witness
        )
    factors = []
    for block in coprimality_graph(ideal).components():
        gens = [ideal.generators[i - 1] for i in block]
        common = gcd_all(gens)
        if len(block) > 1 and common.is_one():
            raise DecompositionError(
                f"generators {block} are linked by common factors but share no variable"
            )
        support = sorted({j for m in gens for j in m.support()})
        sub = ideal.restrict(support, gens)
        verdict = Verdict.COMPLETE_INTERSECTION if len(block) == 1 else Verdict.TRIVIALLY_GOLOD
        shared = None if len(block) == 1 else ideal.variables[common.support()[0]]
        factors.append(TensorFactor(block, sub, verdict, shared))
    log.debug("tensor decomposition", factors=len(factors))
    return tuple(factors)


def tensor_poincare(factors: Sequence[TensorFactor]) -> RationalSeries:
    """Product of the per-factor closed forms."""
    return product([f.poincare() for f in factors])


def _band_width(graph: CoprimalityGraph, ordering: Sequence[int]) -> Optional[int]:
    """d when the reordered graph is exactly the band |i-j| <= d-1, else None."""
    t = graph.t
    position = {g: k for k, g in enumerate(ordering)}
    span = 0
    for a, b in graph.edges():
        span = max(span, abs(position[a] - position[b]))
    for i in range(t):
        for j in range(i + 1, min(t, i + span + 1)):
            if not graph.has_edge(ordering[i], ordering[j]):
                return None
    return span + 1


def _windows_share(ideal: MonomialIdeal, ordering: Sequence[int], size: int) -> bool:
    gens = [ideal.generators[g - 1] for g in ordering]
    return all(
        not gcd_all(gens[i : i + size]).is_one() for i in range(len(gens) - size + 1)
    )


@typechecked
def d_window_structure(
    ideal: MonomialIdeal, ordering: Optional[Sequence[int]] = None
) -> Optional[WindowStructure]:
    """Least d (over the searched orderings) making the coprimality graph a band.

    All orderings are tried for t <= 8 unless one is given; beyond that only
    the declaration order is used.
    """
    t = ideal.t
    if t == 0:
        return None
    graph = coprimality_graph(ideal)
    if ordering is not None:
        if sorted(ordering) != list(range(1, t + 1)):
            raise ParameterError(f"{tuple(ordering)} is not a permutation of 1..{t}")
        candidates = [tuple(ordering)]
    elif t <= PERMUTATION_SEARCH_LIMIT:
        candidates = permutations(range(1, t + 1))
    else:
        log.warning("ordering search skipped", t=t, limit=PERMUTATION_SEARCH_LIMIT)
        candidates = [tuple(range(1, t + 1))]
    best: Optional[Tuple[int, Tuple[int, ...]]] = None
    for order in candidates:
        d = _band_width(graph, order)
        if d is not None and (best is None or d < best[0]):
            best = (d, tuple(order))
            if d == 1:
                break
    if best is None:
        return None
    d, order = best
    return WindowStructure(
        order,
        d,
        _windows_share(ideal, order, d),
        _windows_share(ideal, order, d + 1),
    )


@typechecked
def classify(ideal: MonomialIdeal) -> ClassificationReport:
    notes: List[str] = []
    factors: Tuple[TensorFactor, ...] = ()
    minimal = bool(is_taylor_minimal(ideal))
    if ideal.t and all(m.degree == 2 for m in ideal.generators):
        if minimal:
            try:
                factors = quadratic_tensor_decomposition(ideal)
            except DecompositionError as err:
                notes.append(str(err))
        else:
            notes.append("quadratic ideal without minimal Taylor resolution: no tensor decomposition")
    stable_form = stable_minimal_taylor_form(ideal)
    if stable_form is not None and not any(stable_form.exponents):
        notes.append("stable form with all n_i = 0 has linear generators")
    return ClassificationReport(
        is_complete_intersection=is_complete_intersection(ideal),
        trivially_golod=is_trivially_golod(ideal) if ideal.t else GolodWitness(False),
        stable=is_stable(ideal),
        stable_minimal_taylor_form=stable_form,
        linear_resolution_form=linear_resolution_form(ideal),
        tensor_factors=factors,
        d_window=d_window_structure(ideal),
        notes=tuple(notes),
    )
