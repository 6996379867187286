"""Test cases for the taylor module."""
import pytest
from hypothesis import given, settings

from monres.errors import LatticeCapError, ParameterError
from monres.monomial import Monomial, MonomialIdeal, parse_ideal, power_ideal
from monres.taylor import (
    TaylorComplex,
    compose,
    indices_of,
    is_taylor_minimal,
    mask_of,
    subset_lcm,
    subsets_of_size,
    taylor_differential,
    taylor_ranks,
)

from .strategies import ideals


def test_masks() -> None:
    assert mask_of([1, 3], 3) == 0b101
    assert indices_of(0b101) == (1, 3)
    with pytest.raises(ParameterError):
        mask_of([4], 3)


def test_subsets_of_size() -> None:
    assert list(subsets_of_size(4, 2)) == [0b0011, 0b0101, 0b0110, 0b1001, 0b1010, 0b1100]
    assert list(subsets_of_size(3, 0)) == [0]
    assert list(subsets_of_size(2, 3)) == []


def test_subset_lcm(chain: MonomialIdeal) -> None:
    complex_ = TaylorComplex.build(chain)
    assert subset_lcm(complex_, [1, 2]) == Monomial((2, 2, 1))
    assert subset_lcm(complex_, [1, 2, 3]) == Monomial((2, 2, 2))
    assert subset_lcm(complex_, []).is_one()


def test_minimal(chain: MonomialIdeal) -> None:
    assert is_taylor_minimal(chain)


def test_not_minimal_has_witness() -> None:
    result = is_taylor_minimal(parse_ideal("vars: x,y; x^2, x*y, y^2"))
    assert not result
    assert result.witness.index == 2
    assert result.witness.subset == (1, 2, 3)


def test_ranks(chain: MonomialIdeal) -> None:
    assert taylor_ranks(chain) == [1, 3, 3, 1]


def test_second_differential(chain: MonomialIdeal) -> None:
    d2 = taylor_differential(TaylorComplex.build(chain), 2)
    e1, e2, e12 = mask_of([1], 3), mask_of([2], 3), mask_of([1, 2], 3)
    first = d2.entry(e2, e12)
    second = d2.entry(e1, e12)
    assert (first.sign, first.monomial) == (1, Monomial((2, 0, 0)))
    assert (second.sign, second.monomial) == (-1, Monomial((0, 1, 1)))
    assert d2.entry(mask_of([3], 3), e12) is None


def test_differential_degree_range(chain: MonomialIdeal) -> None:
    with pytest.raises(ParameterError):
        taylor_differential(TaylorComplex.build(chain), 4)


def test_compose_needs_adjacent_degrees(chain: MonomialIdeal) -> None:
    complex_ = TaylorComplex.build(chain)
    with pytest.raises(ParameterError):
        compose(taylor_differential(complex_, 1), taylor_differential(complex_, 3))


def test_lattice_cap(monkeypatch: pytest.MonkeyPatch, chain: MonomialIdeal) -> None:
    monkeypatch.setenv("MONRES_MAX_T", "2")
    with pytest.raises(LatticeCapError) as err:
        TaylorComplex.build(chain)
    assert "MONRES_MAX_T" in str(err.value)


@settings(max_examples=40, deadline=None)
@given(ideals(max_n=3, max_t=4))
def test_differentials_square_to_zero(ideal: MonomialIdeal) -> None:
    complex_ = TaylorComplex.build(ideal)
    for degree in range(1, ideal.t):
        left = taylor_differential(complex_, degree)
        right = taylor_differential(complex_, degree + 1)
        assert compose(left, right) == {}


@settings(max_examples=60, deadline=None)
@given(ideals(max_n=3, max_t=4))
def test_minimality_agrees_with_lattice_scan(ideal: MonomialIdeal) -> None:
    complex_ = TaylorComplex.build(ideal)
    collapses = any(
        complex_.lcm_of(s) == complex_.lcm_of(s & ~(1 << (j - 1)))
        for s in range(1, 1 << ideal.t)
        for j in indices_of(s)
    )
    assert bool(is_taylor_minimal(ideal)) == (not collapses)


@settings(max_examples=60, deadline=None)
@given(ideals(max_n=3, max_t=4))
def test_powers_preserve_minimality(ideal: MonomialIdeal) -> None:
    minimal = bool(is_taylor_minimal(ideal))
    for q in (2, 3):
        assert bool(is_taylor_minimal(power_ideal(ideal, q))) == minimal
