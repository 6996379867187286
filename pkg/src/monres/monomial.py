"""monomial.py - monomials, monomial ideals, parsing and ring reduction."""
import re
from dataclasses import dataclass
from functools import reduce
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from structlog import get_logger
from typeguard import typechecked

from .errors import (
    DimensionMismatchError,
    IdealSyntaxError,
    ParameterError,
    UnitGeneratorError,
    UnknownVariableError,
)

log = get_logger()


@dataclass(frozen=True, order=True)
class Monomial:
    """An exponent vector over a fixed, ordered variable list.

    The all-zero vector stands for 1. Zero-length vectors are rejected; an
    empty variable list has no monomials at all.
    """

    exponents: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.exponents) == 0:
            raise ParameterError("a monomial needs at least one variable")
        if any(e < 0 for e in self.exponents):
            raise ParameterError(f"negative exponent in {self.exponents}")

    @classmethod
    def one(cls, n: int) -> "Monomial":
        return cls((0,) * n)

    @classmethod
    def variable(cls, index: int, n: int) -> "Monomial":
        exps = [0] * n
        exps[index] = 1
        return cls(tuple(exps))

    @property
    def nvars(self) -> int:
        return len(self.exponents)

    @property
    def degree(self) -> int:
        return sum(self.exponents)

    def support(self) -> Tuple[int, ...]:
        """0-based indices j with x_j dividing the monomial."""
        return tuple(j for j, e in enumerate(self.exponents) if e > 0)

    def is_one(self) -> bool:
        return not any(self.exponents)

    def is_squarefree(self) -> bool:
        return all(e <= 1 for e in self.exponents)

    def divides(self, other: "Monomial") -> bool:
        _check_same_length(self, other)
        return all(a <= b for a, b in zip(self.exponents, other.exponents))

    def __mul__(self, other: "Monomial") -> "Monomial":
        _check_same_length(self, other)
        return Monomial(tuple(a + b for a, b in zip(self.exponents, other.exponents)))

    def __truediv__(self, other: "Monomial") -> "Monomial":
        """Exact quotient; raises when ``other`` does not divide ``self``."""
        if not other.divides(self):
            raise ParameterError("monomial quotient is not exact")
        return Monomial(tuple(a - b for a, b in zip(self.exponents, other.exponents)))

    def __pow__(self, q: int) -> "Monomial":
        return Monomial(tuple(e * q for e in self.exponents))

    def format(self, variables: Sequence[str]) -> str:
        """Render in the ideal grammar, e.g. ``x^2*y``; 1 renders as ``1``."""
        factors = []
        for name, e in zip(variables, self.exponents):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        return "*".join(factors) if factors else "1"


def _check_same_length(a: Monomial, b: Monomial) -> None:
    if len(a.exponents) != len(b.exponents):
        raise DimensionMismatchError(
            f"monomials over {len(a.exponents)} and {len(b.exponents)} variables"
        )


@typechecked
def gcd(a: Monomial, b: Monomial) -> Monomial:
    _check_same_length(a, b)
    return Monomial(tuple(min(x, y) for x, y in zip(a.exponents, b.exponents)))


@typechecked
def lcm(a: Monomial, b: Monomial) -> Monomial:
    _check_same_length(a, b)
    return Monomial(tuple(max(x, y) for x, y in zip(a.exponents, b.exponents)))


def gcd_all(monomials: Sequence[Monomial]) -> Monomial:
    return reduce(gcd, monomials)


def lcm_all(monomials: Sequence[Monomial]) -> Monomial:
    return reduce(lcm, monomials)


@typechecked
def minimalize(gens: Iterable[Monomial]) -> Tuple[Monomial, ...]:
    """Divisibility-minimal elements of ``gens``, first occurrences kept in input order."""
    unique: List[Monomial] = []
    for m in gens:
        if m not in unique:
            unique.append(m)
    return tuple(
        m for m in unique if not any(o != m and o.divides(m) for o in unique)
    )


@dataclass(frozen=True)
class MonomialIdeal:
    """A monomial ideal given by its minimal generating set G(I).

    Generators keep their declared order; that order is the indexing
    m_1, ..., m_t used everywhere else.
    """

    variables: Tuple[str, ...]
    generators: Tuple[Monomial, ...]

    def __post_init__(self) -> None:
        if len(set(self.variables)) != len(self.variables):
            raise ParameterError(f"duplicate variable names in {self.variables}")
        for m in self.generators:
            if m.nvars != len(self.variables):
                raise DimensionMismatchError(
                    f"generator over {m.nvars} variables in an ideal over {len(self.variables)}"
                )
            if m.is_one():
                raise UnitGeneratorError("the generator 1 would make the ideal the whole ring")
        if len(set(self.generators)) != len(self.generators):
            raise ParameterError("duplicate generators")
        for m in self.generators:
            if any(o != m and o.divides(m) for o in self.generators):
                raise ParameterError(
                    f"{m.format(self.variables)} is not a minimal generator"
                )

    @classmethod
    def build(cls, variables: Sequence[str], gens: Iterable[Monomial]) -> "MonomialIdeal":
        """Minimalize ``gens`` and wrap them."""
        return cls(tuple(variables), minimalize(gens))

    @property
    def n(self) -> int:
        return len(self.variables)

    @property
    def t(self) -> int:
        return len(self.generators)

    def used_variables(self) -> Tuple[int, ...]:
        used = set()
        for m in self.generators:
            used.update(m.support())
        return tuple(sorted(used))

    def max_degree(self) -> int:
        return max((m.degree for m in self.generators), default=0)

    def contains(self, m: Monomial) -> bool:
        """Monomial membership: some generator divides ``m``."""
        return any(g.divides(m) for g in self.generators)

    def is_squarefree(self) -> bool:
        return all(m.is_squarefree() for m in self.generators)

    def restrict(self, keep: Sequence[int], gens: Optional[Sequence[Monomial]] = None) -> "MonomialIdeal":
        """Project onto the variables ``keep`` (0-based); generators must live there."""
        source = self.generators if gens is None else gens
        names = tuple(self.variables[j] for j in keep)
        projected = []
        for m in source:
            if any(m.exponents[j] for j in range(self.n) if j not in keep):
                raise ParameterError("generator uses a dropped variable")
            projected.append(Monomial(tuple(m.exponents[j] for j in keep)))
        return MonomialIdeal(names, tuple(projected))

    def format_generators(self) -> List[str]:
        return [m.format(self.variables) for m in self.generators]

    def to_text(self) -> str:
        """Source text in the ideal grammar; ``parse_ideal(I.to_text()) == I``."""
        header = f"vars: {','.join(self.variables)};"
        body = ", ".join(self.format_generators())
        return f"{header} {body}" if body else header

    def __str__(self) -> str:
        return "(" + ", ".join(self.format_generators()) + ")"


@dataclass(frozen=True)
class RingReduction:
    ideal: MonomialIdeal
    unused_dropped: int
    linear_dropped: int


_TOKEN = re.compile(
    r"""
    (?P<ws>[ \t\r]+)
  | (?P<comment>\#[^\n]*)
  | (?P<newline>\n)
  | (?P<name>[A-Za-z_][A-Za-z0-9_]*)
  | (?P<number>[0-9]+)
  | (?P<op>[\^*,;:])
    """,
    re.VERBOSE,
)


def _tokenize(text: str) -> List[Tuple[str, str, int]]:
    tokens = []
    pos = 0
    while pos < len(text):
        match = _TOKEN.match(text, pos)
        if match is None:
            raise IdealSyntaxError(f"unexpected character {text[pos]!r}", text, pos)
        kind = match.lastgroup
        if kind == "op":
            kind = match.group()
        if kind not in ("ws", "comment"):
            tokens.append((kind, match.group(), pos))
        pos = match.end()
    tokens.append(("eof", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str) -> None:
        self.text = text
        self.tokens = _tokenize(text)
        self.index = 0

    def peek(self) -> Tuple[str, str, int]:
        return self.tokens[self.index]

    def take(self, kind: str) -> Tuple[str, str, int]:
        token = self.peek()
        if token[0] != kind:
            shown = "end of input" if token[0] == "eof" else repr(token[1])
            raise IdealSyntaxError(f"expected {kind}, found {shown}", self.text, token[2])
        self.index += 1
        return token

    def skip_separators(self) -> None:
        while self.peek()[0] in (",", "newline"):
            self.index += 1

    def header(self) -> Optional[List[str]]:
        kind, value, _ = self.peek()
        nxt = self.tokens[self.index + 1] if self.index + 1 < len(self.tokens) else None
        if not (kind == "name" and value == "vars" and nxt is not None and nxt[0] == ":"):
            return None
        self.index += 2
        names: List[str] = []
        while self.peek()[0] == "newline":
            self.index += 1
        if self.peek()[0] != ";":
            while True:
                _, name, pos = self.take("name")
                if name in names:
                    raise IdealSyntaxError(f"variable {name!r} declared twice", self.text, pos)
                names.append(name)
                if self.peek()[0] != ",":
                    break
                self.index += 1
        self.take(";")
        return names

    def monomial(self) -> Tuple[Dict[str, int], int]:
        start = self.peek()[2]
        factors: Dict[str, int] = {}
        while True:
            kind, value, pos = self.peek()
            if kind == "number":
                self.index += 1
                if value.lstrip("0") != "1":
                    raise IdealSyntaxError("only the constant 1 may appear as a factor", self.text, pos)
            else:
                _, name, pos = self.take("name")
                exponent = 1
                if self.peek()[0] == "^":
                    self.index += 1
                    _, digits, epos = self.take("number")
                    exponent = int(digits)
                    if exponent < 1:
                        raise IdealSyntaxError("exponents must be at least 1", self.text, epos)
                factors[name] = factors.get(name, 0) + exponent
            if self.peek()[0] != "*":
                return factors, start
            self.index += 1


@typechecked
def parse_ideal(text: str) -> MonomialIdeal:
    """Parse an ideal in the ``vars: a,b; a^2*b, b^3`` grammar and minimalize it.

    Parameters
    ----------
    text : str
        Optional ``vars:`` header, then comma- or newline-separated monomials
        made of ``*``-joined factors ``name`` or ``name^k``. ``#`` starts a
        comment.

    Returns
    -------
    MonomialIdeal
        The ideal over the declared variables, or over the variables seen in
        the generators sorted lexicographically when no header is given.
    """
    parser = _Parser(text)
    parser.skip_separators()
    declared = parser.header()
    raw: List[Tuple[Dict[str, int], int]] = []
    parser.skip_separators()
    while parser.peek()[0] != "eof":
        raw.append(parser.monomial())
        kind, value, pos = parser.peek()
        if kind not in (",", "newline", "eof"):
            raise IdealSyntaxError(f"expected ',' or newline, found {value!r}", text, pos)
        parser.skip_separators()

    if declared is None:
        variables = sorted({name for factors, _ in raw for name in factors})
    else:
        variables = declared
    slot = {name: i for i, name in enumerate(variables)}
    gens = []
    for factors, pos in raw:
        exps = [0] * len(variables)
        for name, e in factors.items():
            if name not in slot:
                raise UnknownVariableError(
                    f"unknown variable {name!r} at position {pos}; declared: {', '.join(variables)}"
                )
            exps[slot[name]] += e
        if not any(exps):
            raise UnitGeneratorError(f"generator at position {pos} equals 1")
        gens.append(Monomial(tuple(exps)))
    ideal = MonomialIdeal.build(variables, gens)
    log.debug("parsed ideal", n=ideal.n, t=ideal.t, dropped=len(gens) - ideal.t)
    return ideal


@typechecked
def power_ideal(ideal: MonomialIdeal, q: int) -> MonomialIdeal:
    """I_q with G(I_q) = {m^q | m in G(I)}; powering preserves the antichain."""
    if q < 1:
        raise ParameterError(f"power must be positive, got {q}")
    return MonomialIdeal(ideal.variables, tuple(m**q for m in ideal.generators))


@typechecked
def reduce_ring(ideal: MonomialIdeal) -> RingReduction:
    """Drop linear generators with their variables, then variables no generator uses.

    Each unused variable multiplies the Poincaré series by (1+z); a linear
    generator x_j leaves it unchanged. The reduced ideal lies in m_A^2.
    """
    linear = [m for m in ideal.generators if m.degree == 1]
    linear_vars = {m.support()[0] for m in linear}
    rest = [m for m in ideal.generators if m.degree > 1]
    used = set()
    for m in rest:
        used.update(m.support())
    keep = [j for j in range(ideal.n) if j in used]
    unused = ideal.n - len(linear_vars) - len(keep)
    reduced = ideal.restrict(keep, rest)
    log.debug("reduced ring", unused=unused, linear=len(linear), n=reduced.n)
    return RingReduction(reduced, unused, len(linear))
