"""Command-line interface."""
import os
import sys
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Iterator, List, Optional, Tuple

import click
import typer
from rich.traceback import install
from structlog import get_logger

from . import __version__, console, err_console
from .classification import classify, is_complete_intersection, is_trivially_golod
from .corpus import generate_corpus, run_corpus
from .errors import MonresError, ParameterError
from .koszul import homology_hilbert_series, indecomposable_generators
from .monomial import MonomialIdeal, parse_ideal, power_ideal, reduce_ring
from .oracle import GradedRing, tor_dimensions, verify_poincare
from .partitions import closed_form_d2, remark_identity_check, weight_counts, weight_table
from .polarization import exponent_profile, polarize
from .report import (
    Report,
    classification_json,
    classification_lines,
    hilbert_json,
    ideal_json,
    quoted_misprint,
    series_json,
)
from .series import (
    RationalSeries,
    expand,
    poincare_complete_intersection,
    poincare_series,
    poincare_series_powered,
    poincare_trivially_golod,
)
from .taylor import (
    TaylorComplex,
    indices_of,
    is_taylor_minimal,
    taylor_differential,
    taylor_ranks,
)
from .utils import DEFAULT_PRIME, MAX_T_ENVVAR, PRIME_ENVVAR, configure_logging, resolve

install(show_locals=False)
log = get_logger()

EXIT_INPUT_ERROR = 1
EXIT_MISMATCH = 2


def version_callback(value: bool) -> None:
    """Prints the version of the package."""
    if value:
        console.print(f"[yellow]monres[/] version: [bold blue]{__version__}[/]")
        raise typer.Exit()


app = typer.Typer(
    name="monres",
    help=(
        "Poincaré series, Koszul homology and Taylor resolutions of monomial rings, "
        "with a brute-force Tor oracle to check them"
    ),
)


@app.callback()
def main_callback(
    verbose: int = typer.Option(
        0, "--verbose", "-v", count=True, help="Log more (repeat for debug output)"
    ),
    max_t: Optional[int] = typer.Option(
        None,
        "--max-t",
        envvar=MAX_T_ENVVAR,
        help="Largest generator count for full subset-lattice enumeration (at most 63)",
    ),
    version: Optional[bool] = typer.Option(
        None, "--version", callback=version_callback, is_eager=True
    ),
) -> None:
    configure_logging(resolve(verbose))
    max_t = resolve(max_t)
    if max_t is not None:
        os.environ[MAX_T_ENVVAR] = str(max_t)


def _source_argument() -> Optional[str]:
    return typer.Argument(
        None, help="File holding the ideal, or '-' for stdin (the default)"
    )


def _ideal_option() -> Optional[str]:
    return typer.Option(None, "--ideal", "-i", help="Ideal given inline, e.g. 'vars: x,y; x^2, x*y'")


def _json_option() -> bool:
    return typer.Option(False, "--json", help="Emit a versioned JSON report instead of text")


def _read_ideal(source: Optional[str], text: Optional[str]) -> MonomialIdeal:
    source, text = resolve(source), resolve(text)
    if text is not None:
        return parse_ideal(text)
    if source is None or source == "-":
        return parse_ideal(typer.get_text_stream("stdin").read())
    path = Path(source)
    if not path.is_file():
        raise ParameterError(f"no ideal file at {path}")
    return parse_ideal(path.read_text())


@contextmanager
def _reporting(command: str, as_json: bool) -> Iterator[Report]:
    """Build a report, print it, and turn library errors into exit code 1."""
    started = time.perf_counter()
    report = Report(command)
    try:
        yield report
    except MonresError as err:
        log.debug("command failed", command=command, error=type(err).__name__)
        err_console.print(f"monres {command}: {err}", markup=False, highlight=False, soft_wrap=True)
        raise typer.Exit(code=EXIT_INPUT_ERROR)
    report.elapsed = time.perf_counter() - started
    if resolve(as_json):
        console.print_json(report.dumps())
    else:
        report.render(console)


@app.command(name="parse")
def parse_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    as_json: bool = _json_option(),
) -> None:
    """Normalize an ideal: minimal generators over the declared variables."""
    with _reporting("parse", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        report.add("ideal", ideal_json(ideal), ideal.to_text())
        report.add("n", ideal.n, f"n = {ideal.n}, t = {ideal.t}")
        report.add("t", ideal.t)


@app.command(name="reduce")
def reduce_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    as_json: bool = _json_option(),
) -> None:
    """Drop linear generators with their variables, then unused variables."""
    with _reporting("reduce", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        reduction = reduce_ring(ideal)
        report.add("reduced", ideal_json(reduction.ideal), reduction.ideal.to_text())
        report.add(
            "unused_dropped",
            reduction.unused_dropped,
            f"unused variables dropped: {reduction.unused_dropped}",
        )
        report.add(
            "linear_dropped",
            reduction.linear_dropped,
            f"linear generators dropped: {reduction.linear_dropped}",
        )


@app.command(name="polarize")
def polarize_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    as_json: bool = _json_option(),
) -> None:
    """Squarefree polarization and its slot map."""
    with _reporting("polarize", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        pol = polarize(ideal)
        profile = exponent_profile(ideal)
        report.add("target", ideal_json(pol.target), pol.target.to_text())
        report.add("N", profile.total, f"N = {profile.total}, regular sequence length {pol.extra_variables}")
        report.add("profile", list(profile.maxima))
        slots = pol.slot_map()
        report.add("slots", slots)
        for name, block in slots.items():
            report.lines.append(f"{name} -> {','.join(block) if block else '(none)'}")


@app.command(name="power")
def power_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    q: int = typer.Option(2, "--q", "-q", help="Raise every generator to this power"),
    as_json: bool = _json_option(),
) -> None:
    """The ideal generated by the q-th powers of the generators."""
    with _reporting("power", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        powered = power_ideal(ideal, resolve(q))
        report.add("q", resolve(q))
        report.add("ideal", ideal_json(powered), powered.to_text())


def _subset_name(mask: int) -> str:
    return "{" + ",".join(str(i) for i in indices_of(mask)) + "}"


@app.command(name="taylor")
def taylor_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    differential: Optional[int] = typer.Option(
        None, "--differential", "-d", help="Print the differential d_L in full"
    ),
    as_json: bool = _json_option(),
) -> None:
    """Ranks of the Taylor resolution and, optionally, one differential."""
    with _reporting("taylor", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        ranks = taylor_ranks(ideal)
        report.add("ranks", ranks, "ranks: " + " ".join(str(r) for r in ranks))
        minimal = is_taylor_minimal(ideal)
        report.add("minimal", minimal.minimal, f"minimal: {'yes' if minimal else 'no'}")
        degree = resolve(differential)
        if degree is not None:
            matrix = taylor_differential(TaylorComplex.build(ideal), degree)
            entries = []
            for col in matrix.columns:
                terms = []
                for row in matrix.rows:
                    value = matrix.entry(row, col)
                    if value is None:
                        continue
                    entries.append(
                        [list(indices_of(row)), list(indices_of(col)), value.sign, list(value.monomial.exponents)]
                    )
                    term = f"{value.monomial.format(ideal.variables)}*e{_subset_name(row)}"
                    if not terms:
                        terms.append(term if value.sign > 0 else f"-{term}")
                    else:
                        terms.append(("+ " if value.sign > 0 else "- ") + term)
                body = " ".join(terms)
                report.lines.append(f"d(e{_subset_name(col)}) = {body}")
            report.add("differential", {"degree": degree, "entries": entries})


@app.command(name="minimal")
def minimal_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    as_json: bool = _json_option(),
) -> None:
    """Decide whether the Taylor resolution is minimal."""
    with _reporting("minimal", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        result = is_taylor_minimal(ideal)
        witness = result.witness
        if witness is None:
            report.add("minimal", True, "minimal")
            report.add("witness", None)
        else:
            report.add(
                "minimal",
                False,
                f"not minimal: m_{witness.index} divides the lcm of the other generators",
            )
            report.add("witness", {"subset": list(witness.subset), "index": witness.index})


@app.command(name="hilbert")
def hilbert_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    as_json: bool = _json_option(),
) -> None:
    """Bigraded Hilbert series of the Koszul homology."""
    with _reporting("hilbert", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        hilbert = homology_hilbert_series(ideal)
        report.add("hilbert", hilbert_json(hilbert), hilbert.format())
        report.add("indecomposable", [list(s) for s in indecomposable_generators(ideal)])
        note = quoted_misprint(ideal)
        if note is not None:
            report.warn(note)


@app.command(name="poincare")
def poincare_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    order: Optional[int] = typer.Option(
        None, "--order", help="Also print the coefficients through z^ORDER"
    ),
    as_json: bool = _json_option(),
) -> None:
    """Poincaré series of k over R = A/I as a rational function."""
    with _reporting("poincare", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        result = poincare_series(ideal)
        series = result.series
        report.add("series", series_json(series), series.format())
        reduced = series.format(reduced=True)
        if reduced != series.format():
            report.lines.append(f"reduced: {reduced}")
        report.add("unused_dropped", result.unused_dropped)
        report.add("linear_dropped", result.linear_dropped)
        order = resolve(order)
        if order is not None:
            coefficients = expand(series, order)
            report.add(
                "coefficients", coefficients, "coefficients: " + " ".join(str(c) for c in coefficients)
            )
        note = quoted_misprint(ideal)
        if note is not None:
            report.warn(note)


@app.command(name="classify")
def classify_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    as_json: bool = _json_option(),
) -> None:
    """Structural verdicts: complete intersection, trivially Golod, stable, decompositions."""
    with _reporting("classify", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        result = classify(ideal)
        report.add("classification", classification_json(result))
        report.lines.extend(classification_lines(ideal, result))


@app.command(name="partitions")
def partitions_command(
    t: int = typer.Option(..., "--t", help="Generator count"),
    d: int = typer.Option(..., "--d", help="Window parameter"),
    weights: bool = typer.Option(False, "--weights", help="List the count of every weight"),
    as_json: bool = _json_option(),
) -> None:
    """Counts of subsets by the weight of their canonical strictly ordered partition."""
    identity = True
    with _reporting("partitions", as_json) as report:
        t, d = resolve(t), resolve(d)
        counts = weight_counts(t, d)
        by_shape = {}
        for weight, count in counts.items():
            key = (sum(weight), len(weight))
            by_shape[key] = by_shape.get(key, 0) + count
        shapes = []
        for (m, l), count in sorted(by_shape.items()):
            shapes.append({"m": m, "l": l, "count": count})
            line = f"m={m} l={l}: {count}"
            if d == 2:
                per_weight = closed_form_d2(t, m, l)
                shapes[-1]["closed_form"] = per_weight
                line += f" ({per_weight} per weight)"
            report.lines.append(line)
        report.add("shapes", shapes)
        identity = all(remark_identity_check(t, m) for m in range(1, t + 1))
        report.add("identity", identity, f"composition identity for m = 1..{t}: {'holds' if identity else 'fails'}")
        if resolve(weights):
            frame = weight_table(t, d)
            report.tables.append((f"weights for t={t}, d={d}", frame))
            report.add("weights", frame.to_dict(orient="records"))
    if not identity:
        raise typer.Exit(code=EXIT_MISMATCH)


@app.command(name="oracle")
def oracle_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    hdeg: int = typer.Option(..., "--hdeg", help="Last homological degree"),
    maxdeg: int = typer.Option(..., "--maxdeg", help="Internal degree bound"),
    prime: int = typer.Option(DEFAULT_PRIME, "--prime", envvar=PRIME_ENVVAR, help="Field characteristic"),
    as_json: bool = _json_option(),
) -> None:
    """Betti numbers of k over R by a minimal resolution over GF(p)."""
    with _reporting("oracle", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        hdeg, maxdeg, prime = resolve(hdeg), resolve(maxdeg), resolve(prime)
        table = tor_dimensions(GradedRing(ideal, maxdeg), hdeg, maxdeg, prime)
        totals = table.totals()
        report.add("betti", table.to_json(), "betti: " + " ".join(str(b) for b in totals))
        report.tables.append(("graded Betti numbers", table.to_frame().reset_index()))
        for i, flag in enumerate(table.truncated):
            if flag:
                report.warn(f"b_{i} is a lower bound: raise --maxdeg to at least {i * ideal.max_degree()}")


@app.command(name="verify")
def verify_command(
    source: Optional[str] = _source_argument(),
    ideal_text: Optional[str] = _ideal_option(),
    q: int = typer.Option(2, "--q", "-q", help="Power used for the invariance check"),
    order: int = typer.Option(6, "--order", help="Compare coefficients through z^ORDER"),
    oracle: bool = typer.Option(False, "--oracle", help="Also compare with the Tor oracle"),
    hdeg: int = typer.Option(4, "--hdeg", help="Oracle homological bound"),
    maxdeg: Optional[int] = typer.Option(None, "--maxdeg", help="Oracle degree bound [default: hdeg * max generator degree]"),
    prime: int = typer.Option(DEFAULT_PRIME, "--prime", envvar=PRIME_ENVVAR, help="Oracle field characteristic"),
    as_json: bool = _json_option(),
) -> None:
    """Check P(A/I) against P(A/I_q), the closed forms and optionally the oracle."""
    mismatch = False
    with _reporting("verify", as_json) as report:
        ideal = _read_ideal(source, ideal_text)
        report.ideal = ideal
        q, order = resolve(q), resolve(order)
        result = poincare_series(ideal)
        series = result.series
        powered = poincare_series_powered(ideal, q)
        if result.linear_dropped:
            report.warn(
                f"{result.linear_dropped} linear generator(s) dropped before powering; "
                "the power check applies to the part of I inside m_A^2"
            )
        left, right = expand(series, order), expand(powered, order)
        rows = [
            {"degree": k, "original": a, "powered": b, "status": "match" if a == b else "mismatch"}
            for k, (a, b) in enumerate(zip(left, right))
        ]
        report.add("power", {"q": q, "rows": rows, "equal": series == powered})
        report.lines.append(f"P(A/I)   = {series}")
        report.lines.append(f"P(A/I_{q}) = {powered}")
        for row in rows:
            report.lines.append(f"z^{row['degree']}: {row['original']} {row['powered']} {row['status']}")
        mismatch = series != powered
        closed = _closed_form(ideal)
        if closed is not None:
            name, expected = closed
            agrees = expected == series
            report.add("closed_form", {"route": name, "series": series_json(expected), "equal": agrees})
            report.lines.append(f"{name} closed form: {expected} ({'match' if agrees else 'mismatch'})")
            mismatch = mismatch or not agrees
        if resolve(oracle):
            hdeg = resolve(hdeg)
            bound = resolve(maxdeg)
            if bound is None:
                bound = max(hdeg * ideal.max_degree(), hdeg)
            checked = verify_poincare(ideal, hdeg, bound, resolve(prime))
            frame = checked.to_frame()
            report.add("oracle", frame.to_dict(orient="records"))
            report.tables.append(("formula against oracle", frame))
            for caveat in checked.caveats():
                report.warn(caveat)
            mismatch = mismatch or not checked.ok
        report.add("ok", not mismatch)
        note = quoted_misprint(ideal)
        if note is not None:
            report.warn(note)
    if mismatch:
        raise typer.Exit(code=EXIT_MISMATCH)


def _closed_form(ideal: MonomialIdeal) -> Optional[Tuple[str, RationalSeries]]:
    """The CI or trivially Golod closed form over all n variables, when one applies."""
    reduction = reduce_ring(ideal)
    core = reduction.ideal
    if core.t == 0:
        return None
    n = core.n + reduction.unused_dropped
    if is_complete_intersection(core):
        return "complete-intersection", poincare_complete_intersection(n, core.t)
    if is_trivially_golod(core):
        return "trivially-golod", poincare_trivially_golod(n, core.t)
    return None


@app.command(name="corpus")
def corpus_command(
    seed: int = typer.Option(..., "--seed", help="Seed of the random ideal stream"),
    count: int = typer.Option(..., "--count", help="Number of ideals"),
    jobs: int = typer.Option(1, "--jobs", "-j", help="Worker processes"),
    oracle: bool = typer.Option(False, "--oracle", help="Add the Tor oracle invariants"),
    hdeg: int = typer.Option(3, "--hdeg", help="Oracle homological bound"),
    as_json: bool = _json_option(),
) -> None:
    """Generate seeded minimal-Taylor ideals and run the property suite on each."""
    failed = False
    with _reporting("corpus", as_json) as report:
        seed, count = resolve(seed), resolve(count)
        ideals = generate_corpus(seed, count)
        result = run_corpus(
            seed, count, jobs=resolve(jobs), oracle=resolve(oracle), hdeg=resolve(hdeg), ideals=ideals
        )
        verdicts = []
        for k, checked in enumerate(result.results):
            failures = [c.name for c in checked.failures()]
            verdicts.append(
                {"index": k, "ideal": checked.ideal.to_text(), "passed": checked.passed, "failures": failures}
            )
            status = "ok" if checked.passed else "FAIL " + ",".join(failures)
            report.lines.append(f"{k:4d} {checked.ideal.to_text()}  {status}")
            for check in checked.checks:
                if check.informational and not check.passed:
                    report.warn(f"ideal {k}: {check.name} not preserved")
        summary = result.summary()
        report.add("seed", seed)
        report.add("ideals", verdicts)
        report.add("summary", summary.to_dict(orient="records"))
        report.add("passed", result.passed)
        report.tables.append(("checks", summary))
        failed = not result.passed
    if failed:
        raise typer.Exit(code=EXIT_MISMATCH)


command = typer.main.get_command(app)


def run(argv: Optional[List[str]] = None) -> int:
    """Run the CLI on ``argv`` and return the exit code instead of exiting."""
    try:
        code = command.main(
            args=list(sys.argv[1:] if argv is None else argv),
            prog_name="monres",
            standalone_mode=False,
        )
    except click.exceptions.Exit as stop:
        return stop.exit_code
    except click.ClickException as err:
        err.show(file=sys.stderr)
        return EXIT_INPUT_ERROR
    except click.exceptions.Abort:
        err_console.print("aborted", markup=False)
        return EXIT_INPUT_ERROR
    except MonresError as err:
        err_console.print(f"monres: {err}", markup=False, highlight=False, soft_wrap=True)
        return EXIT_INPUT_ERROR
    return code if isinstance(code, int) else 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()  # pragma: no cover
