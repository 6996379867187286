"""Test cases for the corpus module."""
import pytest

from monres.corpus import check_ideal, generate_corpus, run_corpus
from monres.errors import NotTaylorMinimalError, ParameterError
from monres.monomial import MonomialIdeal, parse_ideal
from monres.taylor import is_taylor_minimal

from .ideals import SHARED_X, SQUARES


def test_generation_is_deterministic() -> None:
    assert generate_corpus(7, 10) == generate_corpus(7, 10)
    assert generate_corpus(7, 10) != generate_corpus(8, 10)


def test_generated_ideals_are_in_bounds() -> None:
    for ideal in generate_corpus(3, 30):
        assert is_taylor_minimal(ideal)
        assert 1 <= ideal.n <= 5
        assert 1 <= ideal.t <= 4
        assert all(2 <= m.degree <= 4 for m in ideal.generators)


def test_generation_rejects_bad_bounds() -> None:
    with pytest.raises(ParameterError):
        generate_corpus(1, -1)
    with pytest.raises(ParameterError):
        generate_corpus(1, 5, max_degree=1)


def test_check_chain(chain: MonomialIdeal) -> None:
    result = check_ideal(chain)
    assert result.passed
    names = [c.name for c in result.checks]
    assert "hilbert-slices" in names
    assert "power-2-poincare" in names
    assert "depolarization" in names
    assert not any(name.endswith("-form") for name in names)


def test_check_closed_forms() -> None:
    golod = check_ideal(parse_ideal(SHARED_X))
    assert "trivially-golod-form" in [c.name for c in golod.checks]
    assert golod.passed
    ci = check_ideal(parse_ideal(SQUARES))
    assert "complete-intersection-form" in [c.name for c in ci.checks]
    assert ci.passed


def test_check_rejects_non_minimal() -> None:
    with pytest.raises(NotTaylorMinimalError):
        check_ideal(parse_ideal("vars: x,y; x^2, x*y, y^2"))


def test_small_corpus_passes() -> None:
    report = run_corpus(seed=11, count=25)
    assert len(report.results) == 25
    assert report.passed
    summary = report.summary()
    assert list(summary.columns) == ["check", "passed", "total"]
    assert (summary["passed"] <= summary["total"]).all()


def test_explicit_ideals(chain: MonomialIdeal, band: MonomialIdeal) -> None:
    report = run_corpus(seed=0, count=0, ideals=[chain, band])
    assert [r.ideal for r in report.results] == [chain, band]
    assert report.passed


def test_empty_report() -> None:
    report = run_corpus(seed=0, count=0)
    assert report.passed
    assert report.summary().empty


@pytest.mark.slow
def test_parallel_matches_serial() -> None:
    serial = run_corpus(seed=5, count=6)
    parallel = run_corpus(seed=5, count=6, jobs=2)
    assert serial.to_frame().equals(parallel.to_frame())


@pytest.mark.slow
def test_hundred_ideal_suite() -> None:
    assert run_corpus(seed=2024, count=100).passed


@pytest.mark.slow
def test_oracle_suite() -> None:
    report = run_corpus(seed=2024, count=20, oracle=True, hdeg=3)
    assert report.passed
    assert "oracle-formula" in set(report.summary()["check"])
