"""report.py - assemble command results into text and versioned JSON reports."""
import json
from dataclasses import dataclass, field
from typing import Any, Dict, FrozenSet, List, Optional, Tuple

import pandas as pd
from rich.console import Console
from rich.table import Table
from typeguard import typechecked

from .classification import ClassificationReport
from .koszul import BigradedPolynomial
from .monomial import MonomialIdeal
from .series import IntPolynomial, RationalSeries

SCHEMA_VERSION = 1

# generator sets of ideals whose Hilbert series is commonly quoted with a wrong coefficient
_QUOTED_MISPRINTS: Dict[FrozenSet[Tuple[int, ...]], str] = {
    frozenset(
        {
            (2, 1, 1, 0, 0),
            (0, 2, 1, 1, 0),
            (0, 0, 2, 1, 1),
            (0, 0, 0, 2, 1),
            (0, 0, 0, 0, 2),
        }
    ): (
        "this ideal's Hilbert series is often quoted with 8*X*Y^2 + 2*X^2*Y^2; it has exactly "
        "three coprime generator pairs, so 7*X*Y^2 + 3*X^2*Y^2 is reported "
        "(the Tor oracle gives b_3 = 42, the quoted value would give 43)"
    ),
}


@dataclass
class Report:
    """One CLI invocation: command echo, normalized input, results, warnings and timing."""

    command: str
    ideal: Optional[MonomialIdeal] = None
    results: Dict[str, Any] = field(default_factory=dict)
    warnings: List[str] = field(default_factory=list)
    elapsed: float = 0.0
    lines: List[str] = field(default_factory=list)
    tables: List[Tuple[str, pd.DataFrame]] = field(default_factory=list)

    def add(self, key: str, value: Any, text: Optional[str] = None) -> None:
        """Record a JSON result and, optionally, the line printed for it."""
        self.results[key] = value
        if text is not None:
            self.lines.append(text)

    def warn(self, message: str) -> None:
        if message not in self.warnings:
            self.warnings.append(message)

    def to_json(self) -> Dict[str, Any]:
        return {
            "schema": SCHEMA_VERSION,
            "command": self.command,
            "input": None if self.ideal is None else self.ideal.to_text(),
            "results": self.results,
            "warnings": self.warnings,
            "elapsed": round(self.elapsed, 6),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=False)

    def render(self, console: Console) -> None:
        for line in self.lines:
            console.print(line, markup=False, highlight=False, soft_wrap=True)
        for title, frame in self.tables:
            console.print(frame_table(frame, title))
        for message in self.warnings:
            console.print(f"warning: {message}", markup=False, highlight=False, soft_wrap=True)


def frame_table(frame: pd.DataFrame, title: str = "") -> Table:
    table = Table(title=title or None)
    for column in frame.columns:
        table.add_column(str(column), justify="right")
    for row in frame.itertuples(index=False):
        table.add_row(*("" if pd.isna(v) else str(v) for v in row))
    return table


def polynomial_json(poly: IntPolynomial) -> List[int]:
    return list(poly.coefficients)


def series_json(series: RationalSeries) -> Dict[str, Any]:
    return {
        "display": series.format(),
        "reduced": series.format(reduced=True),
        "numerator": polynomial_json(series.numerator),
        "denominator": polynomial_json(series.denominator),
    }


def hilbert_json(hilbert: BigradedPolynomial) -> Dict[str, Any]:
    return {"text": hilbert.format(), **hilbert.to_json()}


def ideal_json(ideal: MonomialIdeal) -> Dict[str, Any]:
    return {
        "variables": list(ideal.variables),
        "generators": ideal.format_generators(),
        "exponents": [list(m.exponents) for m in ideal.generators],
        "text": ideal.to_text(),
    }


@typechecked
def classification_json(report: ClassificationReport) -> Dict[str, Any]:
    golod = report.trivially_golod
    stable_form = report.stable_minimal_taylor_form
    linear = report.linear_resolution_form
    window = report.d_window
    return {
        "complete_intersection": report.is_complete_intersection,
        "trivially_golod": golod.holds,
        "common_factor": list(golod.common_factor.exponents) if golod.common_factor else None,
        "stable": report.stable,
        "stable_minimal_taylor_form": None
        if stable_form is None
        else {"exponents": list(stable_form.exponents), "verdict": stable_form.verdict.value},
        "linear_resolution_form": None
        if linear is None
        else {
            "u": list(linear.u.exponents),
            "variables": list(linear.variables),
            "verdict": linear.verdict.value,
        },
        "tensor_factors": [
            {
                "generators": list(f.generator_indices),
                "ideal": f.ideal.to_text(),
                "verdict": f.verdict.value,
                "common_variable": f.common_variable,
            }
            for f in report.tensor_factors
        ],
        "d_window": None
        if window is None
        else {
            "ordering": list(window.ordering),
            "d": window.d,
            "window_gcd_d": window.window_gcd_d,
            "window_gcd_d_plus_one": window.window_gcd_d_plus_one,
        },
        "notes": list(report.notes),
    }


def classification_lines(ideal: MonomialIdeal, report: ClassificationReport) -> List[str]:
    lines = [
        f"complete intersection: {'yes' if report.is_complete_intersection else 'no'}",
    ]
    golod = report.trivially_golod
    if golod.holds and golod.common_factor is not None:
        lines.append(f"trivially Golod: yes (common factor {golod.common_factor.format(ideal.variables)})")
    else:
        lines.append("trivially Golod: no")
    lines.append(f"stable: {'yes' if report.stable else 'no'}")
    if report.stable_minimal_taylor_form is not None:
        form = report.stable_minimal_taylor_form
        lines.append(f"stable minimal-Taylor form: n = {list(form.exponents)} ({form.verdict.value})")
    if report.linear_resolution_form is not None:
        form = report.linear_resolution_form
        names = ", ".join(ideal.variables[j] for j in form.variables)
        lines.append(
            f"linear-resolution form: u = {form.u.format(ideal.variables)}, "
            f"variables {names} ({form.verdict.value})"
        )
    for k, factor in enumerate(report.tensor_factors, start=1):
        lines.append(f"factor P{k}: {factor.ideal} {factor.verdict.value}")
    if report.d_window is not None:
        window = report.d_window
        lines.append(
            f"d-window: d = {window.d}, ordering {list(window.ordering)}, "
            f"gcd over d-windows {'holds' if window.window_gcd_d else 'fails'}, "
            f"over (d+1)-windows {'holds' if window.window_gcd_d_plus_one else 'fails'}"
        )
    lines.extend(f"note: {note}" for note in report.notes)
    return lines


def quoted_misprint(ideal: MonomialIdeal) -> Optional[str]:
    """A discrepancy note when the ideal's Hilbert series is known to be misquoted."""
    return _QUOTED_MISPRINTS.get(frozenset(m.exponents for m in ideal.generators))
