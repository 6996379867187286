"""koszul.py - Koszul homology of monomial rings with minimal Taylor resolution.

The homology classes f_S are indexed by subsets S of the generators. A class
factors as the product of the classes of the connected components of S in
the coprimality graph, so its X-degree (algebra word length) is that
component count and its Y-degree is |S|.
"""
from collections import Counter
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from structlog import get_logger
from sympy import Poly, symbols
from typeguard import typechecked

from .errors import NotTaylorMinimalError, ParameterError
from .monomial import MonomialIdeal
from .taylor import check_lattice_cap, indices_of, is_taylor_minimal, mask_of

log = get_logger()

X, Y = symbols("X Y")


class DisjointSet:
    """Union-find with path halving and union by size."""

    def __init__(self, size: int) -> None:
        self.parents = list(range(size))
        self.sizes = [1] * size

    def find(self, i: int) -> int:
        while self.parents[i] != i:
            self.parents[i] = self.parents[self.parents[i]]
            i = self.parents[i]
        return i

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.sizes[ra] < self.sizes[rb]:
            ra, rb = rb, ra
        self.parents[rb] = ra
        self.sizes[ra] += self.sizes[rb]
        return True


@dataclass(frozen=True)
class CoprimalityGraph:
    """Generators as vertices; i ~ j iff gcd(m_i, m_j) != 1. ``adjacency[i]`` is a bitmask."""

    t: int
    adjacency: Tuple[int, ...]

    def has_edge(self, i: int, j: int) -> bool:
        """Edge test on 1-based indices."""
        return bool(self.adjacency[i - 1] >> (j - 1) & 1)

    def edges(self) -> List[Tuple[int, int]]:
        return [
            (i, j)
            for i in range(1, self.t + 1)
            for j in range(i + 1, self.t + 1)
            if self.has_edge(i, j)
        ]

    def is_empty(self) -> bool:
        return not any(self.adjacency)

    def components(self, subset: Optional[Sequence[int]] = None) -> List[Tuple[int, ...]]:
        """Connected components of the induced subgraph, each sorted, ordered by least element."""
        members = list(range(1, self.t + 1)) if subset is None else sorted(set(subset))
        forest = DisjointSet(self.t)
        for a in members:
            for b in members:
                if a < b and self.has_edge(a, b):
                    forest.union(a - 1, b - 1)
        blocks: Dict[int, List[int]] = {}
        for a in members:
            blocks.setdefault(forest.find(a - 1), []).append(a)
        return sorted((tuple(b) for b in blocks.values()), key=lambda b: b[0])


@typechecked
def coprimality_graph(ideal: MonomialIdeal) -> CoprimalityGraph:
    t = ideal.t
    if t == 0:
        return CoprimalityGraph(0, ())
    support = np.array([[e > 0 for e in m.exponents] for m in ideal.generators], dtype=np.int64)
    shared = (support @ support.T) > 0
    np.fill_diagonal(shared, False)
    adjacency = tuple(
        sum(1 << j for j in range(t) if shared[i, j]) for i in range(t)
    )
    return CoprimalityGraph(t, adjacency)


@typechecked
def component_count(graph: CoprimalityGraph, subset: Sequence[int]) -> int:
    """Number of connected components of the subgraph induced on ``subset`` (1-based)."""
    if not subset:
        raise ParameterError("component count of the empty subset is undefined")
    mask_of(subset, graph.t)
    return len(graph.components(subset))


@dataclass(frozen=True)
class BigradedPolynomial:
    """Integer polynomial in X (algebra degree) and Y (homological degree)."""

    poly: Poly

    @classmethod
    def from_terms(cls, terms: Dict[Tuple[int, int], int]) -> "BigradedPolynomial":
        cleaned = {k: int(c) for k, c in terms.items() if c}
        return cls(Poly.from_dict(cleaned or {(0, 0): 0}, X, Y, domain="ZZ"))

    def terms(self) -> List[Tuple[Tuple[int, int], int]]:
        """Nonzero terms ordered by Y-degree, then X-degree."""
        found = [((int(a), int(b)), int(c)) for (a, b), c in self.poly.terms() if c]
        return sorted(found, key=lambda term: (term[0][1], term[0][0]))

    def coefficient(self, a: int, b: int) -> int:
        return int(self.poly.as_dict().get((a, b), 0))

    def total_degree(self) -> int:
        return max((a + b for (a, b), _ in self.terms()), default=0)

    def evaluate(self, x: int, y: int) -> int:
        return sum(c * x**a * y**b for (a, b), c in self.terms())

    def y_slice_sums(self) -> Dict[int, int]:
        sums: Dict[int, int] = {}
        for (_, b), c in self.terms():
            sums[b] = sums.get(b, 0) + c
        return sums

    def __mul__(self, other: "BigradedPolynomial") -> "BigradedPolynomial":
        return BigradedPolynomial(self.poly * other.poly)

    def format(self) -> str:
        """e.g. ``1 + 3*X*Y + 2*X*Y^2 + X^2*Y^2 + X*Y^3``."""
        parts: List[str] = []
        for (a, b), c in self.terms():
            factors = [f for f in (_power("X", a), _power("Y", b)) if f]
            if not factors:
                body = str(abs(c))
            elif abs(c) == 1:
                body = "*".join(factors)
            else:
                body = "*".join([str(abs(c))] + factors)
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts) if parts else "0"

    def to_json(self) -> Dict[str, List[List[int]]]:
        return {"terms": [[a, b, c] for (a, b), c in self.terms()]}

    def __str__(self) -> str:
        return self.format()


def _power(name: str, k: int) -> str:
    if k == 0:
        return ""
    return name if k == 1 else f"{name}^{k}"


def component_table(graph: CoprimalityGraph) -> bytearray:
    """c(S) for every bitmask S: c(S) = 1 + c(S minus the component of its lowest element)."""
    check_lattice_cap(graph.t)
    size = 1 << graph.t
    table = bytearray(size)
    adjacency = graph.adjacency
    for subset in range(1, size):
        block = subset & -subset
        while True:
            grown = block
            rest = block
            while rest:
                low = rest & -rest
                grown |= adjacency[low.bit_length() - 1]
                rest ^= low
            grown &= subset
            if grown == block:
                break
            block = grown
        table[subset] = table[subset & ~block] + 1
    return table


def _require_minimal(ideal: MonomialIdeal) -> None:
    result = is_taylor_minimal(ideal)
    if not result:
        raise NotTaylorMinimalError(
            f"Koszul homology formula needs a minimal Taylor resolution; {ideal} "
            f"has m_{result.witness.index} dividing the lcm of the other generators",
            result.witness,
        )


@typechecked
def homology_hilbert_series(ideal: MonomialIdeal) -> BigradedPolynomial:
    """Hilb(H(K^R))(X, Y) = sum over subsets S of X^c(S) Y^|S| (the empty set gives 1)."""
    _require_minimal(ideal)
    graph = coprimality_graph(ideal)
    table = component_table(graph)
    counts: Counter = Counter()
    counts[(0, 0)] = 1
    for subset in range(1, len(table)):
        counts[(table[subset], bin(subset).count("1"))] += 1
    log.debug("koszul homology hilbert series", t=ideal.t, terms=len(counts))
    return BigradedPolynomial.from_terms(dict(counts))


@typechecked
def indecomposable_generators(ideal: MonomialIdeal) -> List[Tuple[int, ...]]:
    """Subsets S whose class f_S is indecomposable: the induced subgraph is connected."""
    _require_minimal(ideal)
    table = component_table(coprimality_graph(ideal))
    found = [indices_of(s) for s in range(1, len(table)) if table[s] == 1]
    return sorted(found, key=lambda s: (len(s), s))


@typechecked
def product_class(
    graph: CoprimalityGraph, left: Sequence[int], right: Sequence[int]
) -> Optional[Tuple[int, Tuple[int, ...]]]:
    """f_S * f_T in homology: (sign, S u T) when S, T are disjoint and coprime, else None (zero).

    The sign is that of the shuffle putting the concatenation S, T in order.
    """
    s, r = set(left), set(right)
    if s & r:
        return None
    if any(graph.has_edge(a, b) for a in s for b in r):
        return None
    inversions = sum(1 for a in s for b in r if a > b)
    return (-1 if inversions % 2 else 1, tuple(sorted(s | r)))


def subsets_with_components(graph: CoprimalityGraph, count: int) -> Iterable[Tuple[int, ...]]:
    """All nonempty subsets whose induced subgraph has exactly ``count`` components."""
    table = component_table(graph)
    for s in range(1, len(table)):
        if table[s] == count:
            yield indices_of(s)
