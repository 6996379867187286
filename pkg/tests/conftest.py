"""Ideals shared across the test modules."""
import pytest

from monres.monomial import MonomialIdeal, parse_ideal

from .ideals import BAND, CHAIN, POLAR, SPLIT


@pytest.fixture
def chain() -> MonomialIdeal:
    """(x^2y, y^2z, z^2): coprimality graph is the path 1-2-3."""
    return parse_ideal(CHAIN)


@pytest.fixture
def band() -> MonomialIdeal:
    """Five generators whose coprimality graph is the width-3 band."""
    return parse_ideal(BAND)


@pytest.fixture
def split() -> MonomialIdeal:
    """A quadratic ideal splitting into one common-factor block and two isolated squares."""
    return parse_ideal(SPLIT)


@pytest.fixture
def polar() -> MonomialIdeal:
    return parse_ideal(POLAR)
