"""Exception hierarchy for the workbench.

Every operation-level failure mode has a dedicated class so callers (and the
CLI) can match on them; messages carry the concrete offending data.
"""

from __future__ import annotations


class OxtobyLabError(Exception):
    """Base class for all workbench errors."""


class SpecFormatError(OxtobyLabError):
    """Raw spec description does not parse into the expected shape."""


class NonDividingPeriods(OxtobyLabError):
    """Period structure violates p_0 = 1 / ascending / divisibility rules."""


class FillOnFilledPosition(OxtobyLabError):
    def __init__(self, level: int, residue: int):
        self.level = level
        self.residue = residue
        super().__init__(f"level {level} assigns residue {residue}, which is already filled")


class UnknownSymbol(OxtobyLabError):
    def __init__(self, symbol: object):
        self.symbol = symbol
        super().__init__(f"symbol {symbol!r} is not in the alphabet")


class LevelOutOfRange(OxtobyLabError):
    def __init__(self, level: int, horizon: int):
        self.level = level
        self.horizon = horizon
        super().__init__(f"level {level} outside verified range [0, {horizon}]")


class NotABijection(OxtobyLabError):
    """A residue relabeling is not a bijection of the alphabet."""


class RelabelNotRepresentable(OxtobyLabError):
    """The requested cellwise relabeling is not constant on some coarse
    fill's residue class, so no schedule over the same period structure
    realizes it."""

    def __init__(self, level: int, residue: int):
        super().__init__(
            f"relabeling splits the level-{level} fill at residue {residue}; "
            "it must be constant on each coarse fill's residue class"
        )


class StructureMismatch(OxtobyLabError):
    """Two specs do not share alphabet and period structure."""


class EmptyBase(OxtobyLabError):
    """Frequency base word is empty."""


class BadCongruenceParams(OxtobyLabError):
    def __init__(self, k: int, j: int):
        super().__init__(f"need odd k >= 1 and 0 <= j < k, got k={k}, j={j}")


class InsufficientMeasureDepth(OxtobyLabError):
    def __init__(self, wanted: int, have: int):
        super().__init__(f"measure covers words up to length {have}, need {wanted}")


class AllBlank(OxtobyLabError):
    """No fully defined factor of the requested length exists."""


class BadRatio(OxtobyLabError):
    def __init__(self, ratio: int):
        super().__init__(f"period ratio must be >= 2, got {ratio}")


class LengthLawViolation(OxtobyLabError):
    def __init__(self, level: int, expected: int, got: int):
        super().__init__(f"word b_{level} must have length {expected}, got {got}")


class BlankCountMismatch(OxtobyLabError):
    """Internal blank ledger of the staircase construction is violated."""


class EmptyLanguage(OxtobyLabError):
    """The forbidden-word set admits no bi-infinite sequence."""


class DeadEnd(OxtobyLabError):
    """A language word prefix cannot be extended to the required length."""
