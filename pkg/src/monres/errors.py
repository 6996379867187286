"""errors.py - exception hierarchy for monres."""
from typing import Optional


class MonresError(ValueError):
    """Base class for every error raised on bad input or violated preconditions."""


class IdealSyntaxError(MonresError):
    """The ideal source text does not follow the grammar."""

    def __init__(self, message: str, text: str, position: int) -> None:
        self.position = position
        self.line = text.count("\n", 0, position) + 1
        line_start = text.rfind("\n", 0, position) + 1
        line_end = text.find("\n", position)
        if line_end == -1:
            line_end = len(text)
        self.column = position - line_start + 1
        snippet = text[line_start:line_end]
        caret = " " * (self.column - 1) + "^"
        super().__init__(
            f"{message} (line {self.line}, column {self.column})\n  {snippet}\n  {caret}"
        )


class UnknownVariableError(MonresError):
    pass


class UnitGeneratorError(MonresError):
    """A generator equal to 1 would make the ideal the whole ring."""


class DimensionMismatchError(MonresError):
    pass


class ParameterError(MonresError):
    pass


class LatticeCapError(MonresError):
    def __init__(self, t: int, cap: int) -> None:
        self.t = t
        self.cap = cap
        super().__init__(
            f"{t} generators exceed the subset-lattice cap of {cap}; "
            "set MONRES_MAX_T to raise it (enumeration cost is 2^t)"
        )


class NotTaylorMinimalError(MonresError):
    def __init__(self, message: str, witness: Optional[object] = None) -> None:
        self.witness = witness
        super().__init__(message)


class DecompositionError(MonresError):
    """A structural assumption used by the tensor decomposition does not hold."""


class DegreeCapError(MonresError):
    pass


class MatrixSizeError(MonresError):
    pass
