"""Test cases for the oracle module."""
import numpy as np
import pytest

from monres.errors import DegreeCapError, ParameterError
from monres.koszul import BigradedPolynomial, homology_hilbert_series
from monres.monomial import Monomial, MonomialIdeal, parse_ideal
from monres.oracle import (
    EchelonBasis,
    GradedRing,
    low_degree_expectations,
    nullspace_mod,
    standard_monomials,
    tor_dimensions,
    verify_poincare,
)
from monres.series import IntPolynomial, RationalSeries, expand, substitute_bigraded

from .ideals import PRINCIPAL_LINEAR, PRINCIPAL_SQUARE, SHARED_X, SQUARES


def test_standard_monomials_principal() -> None:
    ring = GradedRing(parse_ideal(PRINCIPAL_SQUARE), 3)
    assert standard_monomials(ring, 0) == [Monomial((0,))]
    assert standard_monomials(ring, 1) == [Monomial((1,))]
    assert standard_monomials(ring, 2) == []


def test_standard_monomials_squares() -> None:
    ring = GradedRing(parse_ideal(SQUARES), 4)
    assert standard_monomials(ring, 2) == [Monomial((1, 1))]
    assert standard_monomials(ring, 3) == []


def test_standard_monomials_chain(chain: MonomialIdeal) -> None:
    ring = GradedRing(chain, 3)
    expected = [(2, 0, 0), (1, 1, 0), (1, 0, 1), (0, 2, 0), (0, 1, 1)]
    assert [m.exponents for m in standard_monomials(ring, 2)] == expected
    assert ring.is_standard((0, 1, 1))
    assert not ring.is_standard((0, 0, 2))


def test_degree_caps() -> None:
    ring = GradedRing(parse_ideal(PRINCIPAL_SQUARE), 2)
    with pytest.raises(DegreeCapError):
        standard_monomials(ring, 3)
    with pytest.raises(ParameterError):
        GradedRing(parse_ideal(PRINCIPAL_SQUARE), -1)
    names = ",".join(f"x{i}" for i in range(10))
    with pytest.raises(DegreeCapError):
        GradedRing(parse_ideal(f"vars: {names}; x0^2"), 10)


def test_nullspace_mod() -> None:
    basis = nullspace_mod(np.array([[1, 1]], dtype=np.int64), 5)
    assert len(basis) == 1
    assert basis[0].tolist() == [4, 1]
    empty = nullspace_mod(np.zeros((0, 2), dtype=np.int64), 5)
    assert [v.tolist() for v in empty] == [[1, 0], [0, 1]]


def test_nullspace_is_a_kernel() -> None:
    matrix = np.array([[1, 2, 3, 4], [2, 4, 6, 8], [0, 1, 1, 0]], dtype=np.int64)
    basis = nullspace_mod(matrix, 7)
    assert len(basis) == 2
    for v in basis:
        assert not ((matrix @ v) % 7).any()


def test_echelon_basis() -> None:
    span = EchelonBasis(2, 5)
    assert span.add(np.array([1, 0]))
    assert not span.add(np.array([2, 0]))
    assert span.add(np.array([1, 1]))
    assert not span.add(np.array([0, 3]))


def test_principal_square_betti() -> None:
    table = tor_dimensions(GradedRing(parse_ideal(PRINCIPAL_SQUARE), 8), 4)
    assert table.totals() == [1, 1, 1, 1, 1]
    assert not any(table.truncated)
    frame = table.to_frame()
    assert frame.loc[2, 2] == 1
    assert frame.loc[1, 2] == 0


def test_principal_linear_betti() -> None:
    table = tor_dimensions(GradedRing(parse_ideal(PRINCIPAL_LINEAR), 4), 3)
    assert table.totals() == [1, 0, 0, 0]


def test_shared_factor_betti() -> None:
    table = tor_dimensions(GradedRing(parse_ideal(SHARED_X), 8), 4)
    assert table.totals() == [1, 2, 3, 5, 8]


def test_squares_betti() -> None:
    table = tor_dimensions(GradedRing(parse_ideal(SQUARES), 8), 4)
    assert table.totals() == [1, 2, 3, 4, 5]
    assert table.to_json()["totals"] == [1, 2, 3, 4, 5]


def test_chain_low_degrees_two_primes(chain: MonomialIdeal) -> None:
    ring = GradedRing(chain, 9)
    first = tor_dimensions(ring, 3, 9, 32003)
    second = tor_dimensions(ring, 3, 9, 65537)
    assert first.totals() == second.totals() == [1, 3, 6, 12]
    assert first.totals()[:3] == low_degree_expectations(chain)


def test_bad_bounds(chain: MonomialIdeal) -> None:
    ring = GradedRing(chain, 4)
    with pytest.raises(ParameterError):
        tor_dimensions(ring, -1)
    with pytest.raises(ParameterError):
        tor_dimensions(ring, 4, 3)
    with pytest.raises(DegreeCapError):
        tor_dimensions(ring, 2, 5)


@pytest.mark.slow
def test_chain_verification(chain: MonomialIdeal) -> None:
    report = verify_poincare(chain, 4, 10)
    assert [row.formula for row in report.rows] == [1, 3, 6, 12, 24]
    assert [row.oracle for row in report.rows] == [1, 3, 6, 12, 24]
    assert [row.truncated for row in report.rows] == [False, False, False, False, True]
    assert [row.status for row in report.rows] == ["match"] * 5
    assert report.ok
    assert len(report.caveats()) == 1
    assert list(report.to_frame().columns) == ["i", "formula", "oracle", "truncated", "status"]


@pytest.mark.slow
def test_band_oracle_rejects_quoted_hilbert_series(band: MonomialIdeal) -> None:
    computed = homology_hilbert_series(band)
    terms = dict(computed.terms())
    terms[(1, 2)], terms[(2, 2)] = 8, 2
    quoted = BigradedPolynomial.from_terms(terms)
    numerator = IntPolynomial.one_plus_z(5)
    quoted_b3 = expand(RationalSeries.normalized(numerator, substitute_bigraded(quoted)), 3)[3]
    computed_b3 = expand(RationalSeries.normalized(numerator, substitute_bigraded(computed)), 3)[3]
    table = tor_dimensions(GradedRing(band, 12), 3)
    assert table.totals() == [1, 5, 15, 42]
    assert not any(table.truncated)
    oracle_b3 = table.totals()[3]
    assert (quoted_b3, computed_b3, oracle_b3) == (43, 42, 42)
