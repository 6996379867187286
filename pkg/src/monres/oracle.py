"""oracle.py - brute-force Betti numbers of k over R = A/I by a minimal resolution over GF(p).

R is multigraded by monomials, and so is the minimal resolution of k, so the
kernel computations split into one small matrix per multidegree alpha. A
free module is a list of generators (degree beta, image); the image of a
generator is a map from generator indices of the previous module to GF(p)
coefficients, the monomial multiplier being implied by the degrees.
"""
from dataclasses import dataclass, field
from itertools import combinations_with_replacement
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from structlog import get_logger
from typeguard import typechecked

from .errors import DegreeCapError, MatrixSizeError, ParameterError
from .monomial import Monomial, MonomialIdeal
from .series import expand, poincare_series
from .utils import DEFAULT_PRIME

log = get_logger()

MATRIX_LIMIT = 20_000
CODE_SPACE_LIMIT = 50_000_000


def _monomial_array(n: int, max_degree: int) -> np.ndarray:
    """Exponent rows of every monomial of degree <= max_degree: by degree, then lex descending."""
    rows: List[Tuple[int, ...]] = []
    for d in range(max_degree + 1):
        level = []
        for combo in combinations_with_replacement(range(n), d):
            exps = [0] * n
            for j in combo:
                exps[j] += 1
            level.append(tuple(exps))
        rows.extend(sorted(level, reverse=True))
    return np.array(rows, dtype=np.int64).reshape(len(rows), n)


class GradedRing:
    """R = A/I truncated at internal degree D, with its standard-monomial basis."""

    def __init__(self, ideal: MonomialIdeal, max_degree: int) -> None:
        if max_degree < 0:
            raise ParameterError("degree bound must be nonnegative")
        self.ideal = ideal
        self.max_degree = max_degree
        n = ideal.n
        radix = max_degree + 1
        if radix**n > CODE_SPACE_LIMIT:
            raise DegreeCapError(
                f"{n} variables up to degree {max_degree} exceed the oracle's monomial index; "
                "lower --maxdeg"
            )
        self.monomials = _monomial_array(n, max_degree)
        self.weights = radix ** np.arange(n, dtype=np.int64)
        self.codes = self.monomials @ self.weights
        gens = np.array([m.exponents for m in ideal.generators], dtype=np.int64).reshape(
            ideal.t, n
        )
        divisible = (gens[None, :, :] <= self.monomials[:, None, :]).all(axis=2).any(axis=1)
        self.standard = ~divisible
        self.standard_by_code = np.zeros(radix**n, dtype=bool)
        self.standard_by_code[self.codes[self.standard]] = True
        self.degrees = self.monomials.sum(axis=1)

    def code(self, exps: Sequence[int]) -> int:
        return int(np.dot(np.asarray(exps, dtype=np.int64), self.weights))

    def is_standard(self, exps: Sequence[int]) -> bool:
        if sum(exps) > self.max_degree:
            raise DegreeCapError(f"degree {sum(exps)} above the bound {self.max_degree}")
        return bool(self.standard_by_code[self.code(exps)])

    def placements(self, degrees: np.ndarray) -> np.ndarray:
        """ok[a, j]: generator j of degree degrees[j] has a basis element x^(alpha_a - beta_j)."""
        if degrees.shape[0] == 0:
            return np.zeros((self.monomials.shape[0], 0), dtype=bool)
        divides = (degrees[None, :, :] <= self.monomials[:, None, :]).all(axis=2)
        diff = self.codes[:, None] - (degrees @ self.weights)[None, :]
        return divides & self.standard_by_code[np.where(divides, diff, 0)]


@typechecked
def standard_monomials(ring: GradedRing, degree: int) -> List[Monomial]:
    """Degree-d monomials outside I, lex descending."""
    if degree > ring.max_degree:
        raise DegreeCapError(f"degree {degree} above the ring's bound {ring.max_degree}")
    if ring.ideal.n == 0:
        return []
    pick = (ring.degrees == degree) & ring.standard
    return [Monomial(tuple(int(e) for e in row)) for row in ring.monomials[pick]]


def _rref(matrix: np.ndarray, p: int) -> Tuple[np.ndarray, List[int]]:
    """Reduced row echelon form over GF(p); pivot = first nonzero entry down each column."""
    a = matrix % p
    pivots: List[int] = []
    r = 0
    rows, cols = a.shape
    for c in range(cols):
        if r == rows:
            break
        nonzero = np.nonzero(a[r:, c])[0]
        if nonzero.size == 0:
            continue
        k = r + int(nonzero[0])
        if k != r:
            a[[r, k]] = a[[k, r]]
        a[r] = a[r] * pow(int(a[r, c]), p - 2, p) % p
        factors = a[:, c].copy()
        factors[r] = 0
        a = (a - factors[:, None] * a[r][None, :]) % p
        pivots.append(c)
        r += 1
    return a, pivots


def nullspace_mod(matrix: np.ndarray, p: int) -> List[np.ndarray]:
    """Basis of the right kernel over GF(p), one vector per free column."""
    cols = matrix.shape[1]
    if matrix.shape[0] == 0:
        return [np.eye(cols, dtype=np.int64)[c] for c in range(cols)]
    reduced, pivots = _rref(matrix, p)
    pivot_set = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivot_set:
            continue
        v = np.zeros(cols, dtype=np.int64)
        v[free] = 1
        for row, c in enumerate(pivots):
            v[c] = (-reduced[row, free]) % p
        basis.append(v)
    return basis


class EchelonBasis:
    """Incrementally maintained row-echelon basis of a subspace of GF(p)^m."""

    def __init__(self, size: int, p: int) -> None:
        self.size = size
        self.p = p
        self.rows: List[Tuple[int, np.ndarray]] = []

    def add(self, vector: np.ndarray) -> bool:
        """Insert ``vector``; False when it already lies in the span."""
        v = vector % self.p
        for pivot, row in self.rows:
            if v[pivot]:
                v = (v - v[pivot] * row) % self.p
        nonzero = np.nonzero(v)[0]
        if nonzero.size == 0:
            return False
        pivot = int(nonzero[0])
        v = v * pow(int(v[pivot]), self.p - 2, self.p) % self.p
        self.rows.append((pivot, v))
        self.rows.sort(key=lambda item: item[0])
        return True


@dataclass
class _FreeModule:
    degrees: List[Tuple[int, ...]] = field(default_factory=list)
    images: List[Dict[int, int]] = field(default_factory=list)

    def degree_array(self, n: int) -> np.ndarray:
        return np.array(self.degrees, dtype=np.int64).reshape(len(self.degrees), n)


@dataclass(frozen=True)
class BettiTable:
    """b_{i,d} for i <= hdeg, d <= maxdeg; ``truncated[i]`` marks b_i as a lower bound."""

    entries: Dict[Tuple[int, int], int]
    hdeg: int
    maxdeg: int
    prime: int
    truncated: Tuple[bool, ...]

    def totals(self) -> List[int]:
        out = [0] * (self.hdeg + 1)
        for (i, _), b in self.entries.items():
            out[i] += b
        return out

    def to_frame(self) -> pd.DataFrame:
        """Rows are internal degrees, columns homological degrees."""
        frame = pd.DataFrame(
            0, index=range(self.maxdeg + 1), columns=range(self.hdeg + 1), dtype=np.int64
        )
        for (i, d), b in self.entries.items():
            frame.loc[d, i] = b
        frame.index.name = "degree"
        frame.columns.name = "i"
        return frame

    def to_json(self) -> Dict[str, object]:
        return {
            "hdeg": self.hdeg,
            "maxdeg": self.maxdeg,
            "prime": self.prime,
            "totals": self.totals(),
            "truncated": list(self.truncated),
            "entries": [[i, d, b] for (i, d), b in sorted(self.entries.items())],
        }


def _truncation_flags(ideal: MonomialIdeal, hdeg: int, maxdeg: int) -> Tuple[bool, ...]:
    """b_i is asserted exact only while i * (largest generator degree) stays within D."""
    g = max(ideal.max_degree(), 1)
    return tuple(i >= 2 and i * g > maxdeg for i in range(hdeg + 1))


@typechecked
def tor_dimensions(
    ring: GradedRing, hdeg: int, maxdeg: Optional[int] = None, prime: int = DEFAULT_PRIME
) -> BettiTable:
    """dim Tor_i^R(k, k) in each internal degree, for i <= hdeg and degrees <= maxdeg.

    Parameters
    ----------
    ring : GradedRing
        The ring; its degree bound caps ``maxdeg``.
    hdeg : int
        Last homological degree computed.
    maxdeg : Optional[int]
        Internal degree bound D, by default the ring's bound.
    prime : int
        Characteristic of the coefficient field.

    Returns
    -------
    BettiTable
        Graded Betti numbers with per-degree truncation flags.
    """
    maxdeg = ring.max_degree if maxdeg is None else maxdeg
    if maxdeg > ring.max_degree:
        raise DegreeCapError(f"maxdeg {maxdeg} above the ring's bound {ring.max_degree}")
    if hdeg < 0:
        raise ParameterError("homological bound must be nonnegative")
    if maxdeg < hdeg:
        raise ParameterError(f"need maxdeg >= hdeg, got maxdeg={maxdeg}, hdeg={hdeg}")
    ideal = ring.ideal
    n = ideal.n
    entries: Dict[Tuple[int, int], int] = {(0, 0): 1}
    flags = _truncation_flags(ideal, hdeg, maxdeg)
    if hdeg == 0 or n == 0:
        return BettiTable(entries, hdeg, maxdeg, prime, flags)

    modules = [_FreeModule([(0,) * n], [{}])]
    first = _FreeModule()
    for v in range(n):
        unit = [0] * n
        unit[v] = 1
        if ring.is_standard(unit):
            first.degrees.append(tuple(unit))
            first.images.append({0: 1})
    modules.append(first)
    if first.degrees:
        entries[(1, 1)] = len(first.degrees)

    within = ring.degrees <= maxdeg
    for level in range(1, hdeg):
        source, target = modules[level], modules[level - 1]
        if not source.degrees:
            modules.append(_FreeModule())
            continue
        columns_ok = ring.placements(source.degree_array(n))
        rows_ok = ring.placements(target.degree_array(n))
        fresh = _FreeModule()
        fresh_codes: List[int] = []
        for a in np.nonzero(within & columns_ok.any(axis=1))[0]:
            cols = [int(j) for j in np.nonzero(columns_ok[a])[0]]
            rows = [int(k) for k in np.nonzero(rows_ok[a])[0]]
            if len(cols) > MATRIX_LIMIT or len(rows) > MATRIX_LIMIT:
                raise MatrixSizeError(
                    f"{len(rows)} x {len(cols)} block exceeds the {MATRIX_LIMIT} dense-matrix guard"
                )
            row_index = {k: r for r, k in enumerate(rows)}
            matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
            for c, j in enumerate(cols):
                for k, coeff in source.images[j].items():
                    if k in row_index:
                        matrix[row_index[k], c] = coeff
            kernel = nullspace_mod(matrix, prime)
            if not kernel:
                continue
            alpha = tuple(int(e) for e in ring.monomials[a])
            alpha_code = int(ring.codes[a])
            col_index = {j: c for c, j in enumerate(cols)}
            span = EchelonBasis(len(cols), prime)
            for g, beta in enumerate(fresh.degrees):
                if beta == alpha or any(b > e for b, e in zip(beta, alpha)):
                    continue
                if not ring.standard_by_code[alpha_code - fresh_codes[g]]:
                    continue
                image = np.zeros(len(cols), dtype=np.int64)
                for j, coeff in fresh.images[g].items():
                    if j in col_index:
                        image[col_index[j]] = coeff
                span.add(image)
            for vector in kernel:
                if span.add(vector):
                    fresh.degrees.append(alpha)
                    fresh.images.append(
                        {cols[c]: int(x) for c, x in enumerate(vector) if x}
                    )
                    fresh_codes.append(alpha_code)
                    key = (level + 1, sum(alpha))
                    entries[key] = entries.get(key, 0) + 1
        log.debug("resolution step", level=level + 1, generators=len(fresh.degrees))
        modules.append(fresh)
    table = BettiTable(entries, hdeg, maxdeg, prime, flags)
    log.info("tor dimensions", totals=table.totals(), prime=prime, truncated=list(flags))
    return table


@dataclass(frozen=True)
class ComparisonRow:
    degree: int
    formula: int
    oracle: int
    truncated: bool

    @property
    def status(self) -> str:
        if self.formula == self.oracle:
            return "match"
        return "truncated" if self.truncated else "mismatch"


@dataclass(frozen=True)
class VerificationReport:
    ideal: MonomialIdeal
    series: str
    rows: Tuple[ComparisonRow, ...]

    @property
    def ok(self) -> bool:
        return all(row.status != "mismatch" for row in self.rows)

    def caveats(self) -> List[str]:
        return [
            f"b_{row.degree} may be incomplete: generators above the degree bound are not searched"
            for row in self.rows
            if row.truncated
        ]

    def to_frame(self) -> pd.DataFrame:
        return pd.DataFrame(
            [
                {
                    "i": row.degree,
                    "formula": row.formula,
                    "oracle": row.oracle,
                    "truncated": row.truncated,
                    "status": row.status,
                }
                for row in self.rows
            ]
        )


@typechecked
def verify_poincare(
    ideal: MonomialIdeal, hdeg: int, maxdeg: int, prime: int = DEFAULT_PRIME
) -> VerificationReport:
    """Compare the expanded Poincaré series with oracle Betti numbers, degree by degree."""
    series = poincare_series(ideal).series
    formula = expand(series, hdeg)
    table = tor_dimensions(GradedRing(ideal, maxdeg), hdeg, maxdeg, prime)
    oracle = table.totals()
    rows = tuple(
        ComparisonRow(i, formula[i], oracle[i], table.truncated[i]) for i in range(hdeg + 1)
    )
    report = VerificationReport(ideal, series.format(), rows)
    if not report.ok:
        log.warning("oracle disagrees with formula", ideal=str(ideal), formula=formula, oracle=oracle)
    return report


def low_degree_expectations(ideal: MonomialIdeal) -> List[int]:
    """b_0 = 1, b_1 = n, b_2 = C(n,2) + t for ideals inside m_A^2."""
    return [1, ideal.n, comb(ideal.n, 2) + ideal.t]
