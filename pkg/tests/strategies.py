"""hypothesis strategies for small monomial ideals."""
from typing import Callable

from hypothesis import assume
from hypothesis import strategies as st

from monres.monomial import Monomial, MonomialIdeal, minimalize
from monres.taylor import is_taylor_minimal


def monomials(n: int, max_exponent: int = 3, min_degree: int = 1) -> st.SearchStrategy[Monomial]:
    return (
        st.lists(st.integers(0, max_exponent), min_size=n, max_size=n)
        .filter(lambda exps: sum(exps) >= min_degree)
        .map(lambda exps: Monomial(tuple(exps)))
    )


@st.composite
def ideals(
    draw: Callable,
    max_n: int = 4,
    max_t: int = 4,
    max_exponent: int = 3,
    min_degree: int = 1,
) -> MonomialIdeal:
    n = draw(st.integers(1, max_n))
    gens = draw(st.lists(monomials(n, max_exponent, min_degree), min_size=0, max_size=max_t))
    names = tuple(f"x{i + 1}" for i in range(n))
    return MonomialIdeal(names, minimalize(gens))


def minimal_taylor_ideals(**kwargs: int) -> st.SearchStrategy[MonomialIdeal]:
    """Ideals inside m_A^2 (by default) whose Taylor resolution is minimal."""
    kwargs.setdefault("min_degree", 2)
    return ideals(**kwargs).filter(lambda ideal: bool(is_taylor_minimal(ideal)))


@st.composite
def quadratic_ideals(draw: Callable, max_n: int = 5, max_t: int = 5) -> MonomialIdeal:
    """Quadratic ideals with minimal Taylor resolution, one generator per drawn pair of variables."""
    n = draw(st.integers(1, max_n))
    pairs = draw(
        st.lists(st.tuples(st.integers(0, n - 1), st.integers(0, n - 1)), min_size=1, max_size=max_t)
    )
    gens = []
    for i, j in pairs:
        exps = [0] * n
        exps[i] += 1
        exps[j] += 1
        gens.append(Monomial(tuple(exps)))
    ideal = MonomialIdeal(tuple(f"x{i + 1}" for i in range(n)), minimalize(gens))
    assume(bool(is_taylor_minimal(ideal)))
    return ideal
