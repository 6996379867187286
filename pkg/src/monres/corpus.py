"""corpus.py - seeded random minimal-Taylor ideals and the property suite run over them."""
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import partial
from math import comb
from typing import List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd
from structlog import get_logger
from typeguard import typechecked

from .classification import d_window_structure, is_complete_intersection, is_trivially_golod
from .errors import ParameterError
from .koszul import homology_hilbert_series
from .monomial import Monomial, MonomialIdeal, minimalize, power_ideal
from .oracle import GradedRing, low_degree_expectations, tor_dimensions
from .polarization import depolarize_check, polarize
from .series import (
    expand,
    poincare_complete_intersection,
    poincare_minimal_taylor,
    poincare_series,
    poincare_trivially_golod,
)
from .taylor import is_taylor_minimal

log = get_logger()

ORACLE_PRIMES = (32003, 65537)
POWERS = (2, 3)


@typechecked
def generate_corpus(
    seed: int,
    count: int,
    max_n: int = 5,
    max_t: int = 4,
    max_degree: int = 4,
) -> List[MonomialIdeal]:
    """Rejection-sample ideals inside m_A^2 whose Taylor resolution is minimal.

    The numpy PCG64 stream behind ``default_rng(seed)`` is platform independent,
    so a seed always reproduces the same ideals in the same order.
    """
    if count < 0 or max_n < 1 or max_t < 1 or max_degree < 2:
        raise ParameterError("need count >= 0, max_n >= 1, max_t >= 1 and max_degree >= 2")
    rng = np.random.default_rng(seed)
    out: List[MonomialIdeal] = []
    attempts = 0
    while len(out) < count:
        attempts += 1
        if attempts > 1000 * max(count, 1):
            raise ParameterError("rejection sampling made no progress; loosen the corpus bounds")
        n = int(rng.integers(1, max_n + 1))
        t = int(rng.integers(1, max_t + 1))
        gens = []
        for _ in range(t):
            degree = int(rng.integers(2, max_degree + 1))
            gens.append(Monomial(tuple(int(e) for e in rng.multinomial(degree, [1.0 / n] * n))))
        names = tuple(f"x{i + 1}" for i in range(n))
        ideal = MonomialIdeal(names, minimalize(gens))
        if is_taylor_minimal(ideal):
            out.append(ideal)
    log.info("generated corpus", seed=seed, count=count, attempts=attempts)
    return out


@dataclass(frozen=True)
class PropertyCheck:
    name: str
    passed: bool
    detail: str = ""
    informational: bool = False


@dataclass(frozen=True)
class IdealCheck:
    ideal: MonomialIdeal
    checks: Tuple[PropertyCheck, ...]

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if not c.informational)

    def failures(self) -> List[PropertyCheck]:
        return [c for c in self.checks if not c.passed and not c.informational]


def _verdicts(ideal: MonomialIdeal) -> Tuple[bool, bool, Optional[int]]:
    window = d_window_structure(ideal)
    return (
        is_complete_intersection(ideal),
        bool(is_trivially_golod(ideal)) if ideal.t else False,
        None if window is None else window.d,
    )


def _power_checks(ideal: MonomialIdeal, series, hilbert) -> List[PropertyCheck]:
    checks = []
    verdicts = _verdicts(ideal)
    for q in POWERS:
        powered = power_ideal(ideal, q)
        minimal = bool(is_taylor_minimal(powered))
        checks.append(PropertyCheck(f"power-{q}-minimality", minimal))
        if not minimal:
            continue
        lifted = poincare_minimal_taylor(powered)
        checks.append(
            PropertyCheck(f"power-{q}-poincare", lifted == series, f"{series} vs {lifted}")
        )
        checks.append(
            PropertyCheck(f"power-{q}-hilbert", homology_hilbert_series(powered) == hilbert)
        )
        checks.append(PropertyCheck(f"power-{q}-verdicts", _verdicts(powered) == verdicts))
    return checks


def _closed_form_check(ideal: MonomialIdeal, series) -> Optional[PropertyCheck]:
    n = len(ideal.used_variables())
    if is_complete_intersection(ideal):
        expected = poincare_complete_intersection(n, ideal.t)
        return PropertyCheck("complete-intersection-form", expected == series, str(expected))
    if ideal.t and is_trivially_golod(ideal):
        expected = poincare_trivially_golod(n, ideal.t)
        return PropertyCheck("trivially-golod-form", expected == series, str(expected))
    return None


def _oracle_checks(ideal: MonomialIdeal, hdeg: int) -> List[PropertyCheck]:
    maxdeg = max(hdeg * ideal.max_degree(), hdeg)
    ring = GradedRing(ideal, maxdeg)
    tables = [tor_dimensions(ring, hdeg, maxdeg, p) for p in ORACLE_PRIMES]
    totals = [table.totals() for table in tables]
    expected_low = low_degree_expectations(ideal)[: hdeg + 1]
    formula = expand(poincare_series(ideal).series, hdeg)
    exact = [i for i in range(hdeg + 1) if not tables[0].truncated[i]]
    return [
        PropertyCheck("oracle-low-degrees", totals[0][: len(expected_low)] == expected_low,
                      f"{totals[0]} vs {expected_low}"),
        PropertyCheck("oracle-two-primes", totals[0] == totals[1], f"{totals[0]} vs {totals[1]}"),
        PropertyCheck(
            "oracle-formula",
            all(totals[0][i] == formula[i] for i in exact),
            f"{totals[0]} vs {formula}",
        ),
    ]


def check_ideal(ideal: MonomialIdeal, oracle: bool = False, hdeg: int = 3) -> IdealCheck:
    """Run every property of the suite on one minimal-Taylor ideal."""
    series = poincare_minimal_taylor(ideal)
    hilbert = homology_hilbert_series(ideal)
    t = ideal.t
    slices = hilbert.y_slice_sums()
    checks = [
        PropertyCheck(
            "hilbert-slices",
            all(slices.get(m, 0) == comb(t, m) for m in range(t + 1))
            and hilbert.evaluate(1, 1) == 2**t,
        ),
        PropertyCheck(
            "positive-coefficients",
            all(c >= 1 for c in expand(series, 10)),
            str(expand(series, 10)),
        ),
    ]
    checks.extend(_power_checks(ideal, series, hilbert))
    closed = _closed_form_check(ideal, series)
    if closed is not None:
        checks.append(closed)
    pol = depolarize_check(ideal) if is_taylor_minimal(polarize(ideal).target) else None
    if pol is None:
        checks.append(
            PropertyCheck(
                "polarization-minimality", False, "polarized ideal is not Taylor-minimal", True
            )
        )
    else:
        checks.append(PropertyCheck("polarization-minimality", pol.minimality_preserved, "", True))
        checks.append(PropertyCheck("depolarization", pol.agrees, str(pol.via_polarization)))
    if oracle:
        checks.extend(_oracle_checks(ideal, hdeg))
    result = IdealCheck(ideal, tuple(checks))
    if not result.passed:
        log.warning("property failure", ideal=str(ideal), failed=[c.name for c in result.failures()])
    return result


@dataclass(frozen=True)
class CorpusReport:
    seed: int
    results: Tuple[IdealCheck, ...]

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_frame(self) -> pd.DataFrame:
        rows = []
        for k, result in enumerate(self.results):
            for check in result.checks:
                rows.append(
                    {
                        "ideal": k,
                        "generators": str(result.ideal),
                        "check": check.name,
                        "passed": check.passed,
                        "informational": check.informational,
                    }
                )
        return pd.DataFrame(
            rows, columns=["ideal", "generators", "check", "passed", "informational"]
        )

    def summary(self) -> pd.DataFrame:
        """Pass counts per check name."""
        frame = self.to_frame()
        if frame.empty:
            return pd.DataFrame(columns=["check", "passed", "total"])
        grouped = frame.groupby("check")["passed"].agg(["sum", "count"]).reset_index()
        return grouped.rename(columns={"sum": "passed", "count": "total"})


@typechecked
def run_corpus(
    seed: int,
    count: int,
    jobs: int = 1,
    oracle: bool = False,
    hdeg: int = 3,
    ideals: Optional[Sequence[MonomialIdeal]] = None,
) -> CorpusReport:
    """Check every corpus ideal; results keep submission order whatever ``jobs`` is."""
    batch = list(ideals) if ideals is not None else generate_corpus(seed, count)
    task = partial(check_ideal, oracle=oracle, hdeg=hdeg)
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(task, batch))
    else:
        results = [task(ideal) for ideal in batch]
    report = CorpusReport(seed, tuple(results))
    log.info("corpus checked", seed=seed, count=len(results), passed=report.passed)
    return report
