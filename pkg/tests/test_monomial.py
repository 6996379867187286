"""Test cases for the monomial module."""
import pytest
from hypothesis import given, settings

from monres.errors import (
    DimensionMismatchError,
    IdealSyntaxError,
    ParameterError,
    UnitGeneratorError,
    UnknownVariableError,
)
from monres.monomial import (
    Monomial,
    MonomialIdeal,
    gcd,
    lcm,
    minimalize,
    parse_ideal,
    power_ideal,
    reduce_ring,
)

from .ideals import CHAIN, PRINCIPAL_LINEAR
from .strategies import ideals, monomials


def exps(ideal: MonomialIdeal):
    return [m.exponents for m in ideal.generators]


def test_parse_declared_variables() -> None:
    ideal = parse_ideal(CHAIN)
    assert ideal.variables == ("x", "y", "z")
    assert exps(ideal) == [(2, 1, 0), (0, 2, 1), (0, 0, 2)]
    assert (ideal.n, ideal.t) == (3, 3)


def test_parse_single_linear_generator() -> None:
    assert exps(parse_ideal(PRINCIPAL_LINEAR)) == [(1,)]


def test_parse_minimalizes() -> None:
    assert exps(parse_ideal("vars: x,y; x^2, x^2*y")) == [(2, 0)]


def test_parse_infers_sorted_variables() -> None:
    ideal = parse_ideal("y^2, x*y")
    assert ideal.variables == ("x", "y")
    assert exps(ideal) == [(0, 2), (1, 1)]


def test_parse_comments_newlines_and_repeated_factors() -> None:
    text = "# two generators\nvars: a,b;\na*a*b  # a^2*b\nb^3\n"
    assert exps(parse_ideal(text)) == [(2, 1), (0, 3)]


def test_parse_zero_ideal() -> None:
    ideal = parse_ideal("vars: x,y;")
    assert ideal.t == 0
    assert ideal.n == 2


def test_syntax_error_reports_position() -> None:
    with pytest.raises(IdealSyntaxError) as err:
        parse_ideal("vars: x,y; x^")
    assert err.value.line == 1
    assert err.value.position == len("vars: x,y; x^")
    assert "^" in str(err.value)


def test_juxtaposition_is_rejected() -> None:
    with pytest.raises(IdealSyntaxError):
        parse_ideal("vars: x,y; x y")


def test_numeric_factor_is_rejected() -> None:
    with pytest.raises(IdealSyntaxError):
        parse_ideal("vars: x; 2*x")


def test_unknown_variable() -> None:
    with pytest.raises(UnknownVariableError):
        parse_ideal("vars: x; y^2")


def test_unit_generator() -> None:
    with pytest.raises(UnitGeneratorError):
        parse_ideal("vars: x; 1")


def test_gcd_and_lcm() -> None:
    a, b, c = Monomial((2, 1, 0)), Monomial((0, 2, 1)), Monomial((0, 0, 2))
    assert gcd(a, b) == Monomial((0, 1, 0))
    assert lcm(a, b) == Monomial((2, 2, 1))
    assert gcd(a, c).is_one()
    assert gcd(a, a) == lcm(a, a) == a


def test_mismatched_lengths() -> None:
    with pytest.raises(DimensionMismatchError):
        gcd(Monomial((1,)), Monomial((1, 0)))


def test_monomial_rejects_bad_exponents() -> None:
    with pytest.raises(ParameterError):
        Monomial(())
    with pytest.raises(ParameterError):
        Monomial((1, -1))


def test_exact_quotient() -> None:
    assert Monomial((2, 2, 1)) / Monomial((0, 2, 1)) == Monomial((2, 0, 0))
    with pytest.raises(ParameterError):
        Monomial((1, 0)) / Monomial((0, 1))


def test_minimalize_keeps_first_occurrences() -> None:
    gens = [Monomial((0, 2)), Monomial((2, 0)), Monomial((2, 1)), Monomial((0, 2))]
    assert minimalize(gens) == (Monomial((0, 2)), Monomial((2, 0)))


def test_ideal_rejects_non_minimal_generators() -> None:
    with pytest.raises(ParameterError):
        MonomialIdeal(("x", "y"), (Monomial((2, 0)), Monomial((2, 1))))


def test_power_ideal() -> None:
    powered = power_ideal(parse_ideal(CHAIN), 2)
    assert exps(powered) == [(4, 2, 0), (0, 4, 2), (0, 0, 4)]
    with pytest.raises(ParameterError):
        power_ideal(parse_ideal(CHAIN), 0)


def test_reduce_drops_linear_and_unused() -> None:
    reduction = reduce_ring(parse_ideal("vars: a,b,c,d; a, b^2, b*c"))
    assert reduction.ideal.variables == ("b", "c")
    assert exps(reduction.ideal) == [(2, 0), (1, 1)]
    assert reduction.linear_dropped == 1
    assert reduction.unused_dropped == 1


def test_reduce_principal_linear() -> None:
    reduction = reduce_ring(parse_ideal(PRINCIPAL_LINEAR))
    assert reduction.ideal.t == 0
    assert reduction.ideal.n == 0
    assert (reduction.linear_dropped, reduction.unused_dropped) == (1, 0)


def test_to_text() -> None:
    assert parse_ideal(CHAIN).to_text() == "vars: x,y,z; x^2*y, y^2*z, z^2"
    assert str(parse_ideal(CHAIN)) == "(x^2*y, y^2*z, z^2)"


@settings(max_examples=60, deadline=None)
@given(ideals())
def test_text_reparses_to_the_same_ideal(ideal: MonomialIdeal) -> None:
    assert parse_ideal(ideal.to_text()) == ideal


@settings(max_examples=60, deadline=None)
@given(monomials(3), monomials(3))
def test_gcd_times_lcm(a: Monomial, b: Monomial) -> None:
    assert gcd(a, b) * lcm(a, b) == a * b


@settings(max_examples=60, deadline=None)
@given(ideals())
def test_minimal_generators_form_an_antichain(ideal: MonomialIdeal) -> None:
    for m in ideal.generators:
        assert not any(o != m and o.divides(m) for o in ideal.generators)
    assert minimalize(ideal.generators) == ideal.generators


@settings(max_examples=60, deadline=None)
@given(ideals())
def test_reduction_is_idempotent(ideal: MonomialIdeal) -> None:
    once = reduce_ring(ideal).ideal
    twice = reduce_ring(once)
    assert twice.ideal == once
    assert (twice.unused_dropped, twice.linear_dropped) == (0, 0)
    assert all(m.degree >= 2 for m in once.generators)


@settings(max_examples=40, deadline=None)
@given(ideals(max_n=3, max_t=4))
def test_repeated_powers_compose(ideal: MonomialIdeal) -> None:
    for q, r in [(2, 2), (2, 3), (3, 1)]:
        assert power_ideal(power_ideal(ideal, q), r) == power_ideal(ideal, q * r)
