"""taylor.py - the Taylor complex of A/I: subset lcms, differentials, minimality."""
from collections import defaultdict
from dataclasses import dataclass, field
from math import comb
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

import numpy as np
from structlog import get_logger
from typeguard import typechecked

from .errors import LatticeCapError, ParameterError
from .monomial import Monomial, MonomialIdeal, lcm_all
from .utils import BITMASK_WIDTH, lattice_cap

log = get_logger()


def mask_of(indices: Sequence[int], t: int) -> int:
    """Bitmask of a subset given by 1-based generator indices."""
    mask = 0
    for i in indices:
        if not 1 <= i <= t:
            raise ParameterError(f"generator index {i} outside 1..{t}")
        mask |= 1 << (i - 1)
    return mask


def indices_of(mask: int) -> Tuple[int, ...]:
    """1-based generator indices of a bitmask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def subsets_of_size(t: int, size: int) -> Iterator[int]:
    """Bitmasks of all ``size``-subsets of a t-set in increasing numeric order (Gosper)."""
    if size == 0:
        yield 0
        return
    if size > t:
        return
    mask = (1 << size) - 1
    limit = 1 << t
    while mask < limit:
        yield mask
        low = mask & -mask
        ripple = mask + low
        mask = (((ripple ^ mask) >> 2) // low) | ripple


def check_lattice_cap(t: int) -> None:
    cap = lattice_cap()
    if t > cap or t > BITMASK_WIDTH:
        raise LatticeCapError(t, cap)


@dataclass(frozen=True)
class TaylorWitness:
    """m_S equals m_{S minus {j}}: the resolution is not minimal."""

    subset: Tuple[int, ...]
    index: int


@dataclass(frozen=True)
class MinimalityResult:
    minimal: bool
    witness: Optional[TaylorWitness] = None

    def __bool__(self) -> bool:
        return self.minimal


@dataclass(frozen=True)
class SignedMonomial:
    sign: int
    monomial: Monomial


@dataclass(frozen=True)
class DifferentialMatrix:
    """d_l : T_l -> T_{l-1}; rows are (l-1)-subsets, columns l-subsets (bitmasks)."""

    degree: int
    rows: Tuple[int, ...]
    columns: Tuple[int, ...]
    entries: Dict[Tuple[int, int], SignedMonomial] = field(compare=False)

    def entry(self, row: int, column: int) -> Optional[SignedMonomial]:
        return self.entries.get((row, column))


@dataclass(frozen=True)
class TaylorComplex:
    """Subset-lcm table of an ideal; row S of ``table`` holds the exponents of m_S."""

    ideal: MonomialIdeal
    table: np.ndarray = field(compare=False, repr=False)

    @classmethod
    def build(cls, ideal: MonomialIdeal) -> "TaylorComplex":
        if ideal.n == 0:
            raise ParameterError("the Taylor complex needs at least one variable")
        check_lattice_cap(ideal.t)
        table = np.zeros((1, ideal.n), dtype=np.int64)
        # doubling keeps row index == bitmask: row S | 1<<i is lcm(m_S, m_i)
        for m in ideal.generators:
            gen = np.asarray(m.exponents, dtype=np.int64)
            table = np.vstack([table, np.maximum(table, gen)])
        table.setflags(write=False)
        log.debug("built lcm lattice", t=ideal.t, entries=table.shape[0])
        return cls(ideal, table)

    @property
    def t(self) -> int:
        return self.ideal.t

    def lcm_of(self, mask: int) -> Monomial:
        if mask < 0 or mask >= self.table.shape[0]:
            raise ParameterError(f"subset {mask:#x} outside the {self.t}-generator lattice")
        return Monomial(tuple(int(e) for e in self.table[mask]))


@typechecked
def subset_lcm(complex_: TaylorComplex, subset: Sequence[int]) -> Monomial:
    """m_S for a subset of 1-based generator indices; m_{} = 1."""
    return complex_.lcm_of(mask_of(subset, complex_.t))


@typechecked
def is_taylor_minimal(ideal: MonomialIdeal) -> MinimalityResult:
    """Decide whether the Taylor resolution of A/I is minimal.

    m_S = m_{S-{j}} for some S containing j exactly when m_j divides the lcm of
    the other generators, so the full set is always a witness when one exists.
    """
    gens = ideal.generators
    for j, m in enumerate(gens):
        others = [g for i, g in enumerate(gens) if i != j]
        if others and m.divides(lcm_all(others)):
            witness = TaylorWitness(tuple(range(1, ideal.t + 1)), j + 1)
            log.debug("taylor resolution not minimal", subset=witness.subset, index=witness.index)
            return MinimalityResult(False, witness)
    return MinimalityResult(True)


@typechecked
def taylor_ranks(ideal: MonomialIdeal) -> List[int]:
    return [comb(ideal.t, l) for l in range(ideal.t + 1)]


@typechecked
def taylor_differential(complex_: TaylorComplex, degree: int) -> DifferentialMatrix:
    """d(e_S) = sum_j (-1)^(j-1) m_S / m_{S - i_j} e_{S - i_j}, i_j the j-th smallest of S."""
    t = complex_.t
    if not 1 <= degree <= t:
        raise ParameterError(f"differential degree {degree} outside 1..{t}")
    rows = tuple(subsets_of_size(t, degree - 1))
    columns = tuple(subsets_of_size(t, degree))
    entries: Dict[Tuple[int, int], SignedMonomial] = {}
    for col in columns:
        m_s = complex_.lcm_of(col)
        for j, i in enumerate(indices_of(col)):
            face = col & ~(1 << (i - 1))
            sign = 1 if j % 2 == 0 else -1
            entries[(face, col)] = SignedMonomial(sign, m_s / complex_.lcm_of(face))
    return DifferentialMatrix(degree, rows, columns, entries)


def compose(
    left: DifferentialMatrix, right: DifferentialMatrix
) -> Dict[Tuple[int, int], Dict[Monomial, int]]:
    """Exact product left * right with like monomials collected; zero terms dropped."""
    if right.degree != left.degree + 1:
        raise ParameterError("only d_l o d_(l+1) is defined")
    by_row: Dict[int, List[Tuple[int, SignedMonomial]]] = defaultdict(list)
    for (row, mid), value in left.entries.items():
        by_row[mid].append((row, value))
    product: Dict[Tuple[int, int], Dict[Monomial, int]] = defaultdict(lambda: defaultdict(int))
    for (mid, col), rvalue in right.entries.items():
        for row, lvalue in by_row.get(mid, []):
            term = lvalue.monomial * rvalue.monomial
            product[(row, col)][term] += lvalue.sign * rvalue.sign
    return {
        key: {m: c for m, c in terms.items() if c}
        for key, terms in product.items()
        if any(terms.values())
    }
