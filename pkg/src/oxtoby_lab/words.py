"""Alphabets and periodic partial words.

A partial word is a bi-infinite periodic sequence over an alphabet plus a
reserved blank; one period is stored as ``bytes`` (symbol codes, blank =
0xFF) and all indexing is modular. These are the carriers for schedule
skeletons and their shifts.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence

from . import _kernels
from .errors import UnknownSymbol

BLANK = _kernels.BLANK
BLANK_GLYPH = "□"  # □


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of symbol tokens; the blank glyph is reserved."""

    symbols: tuple[str, ...]

    def __post_init__(self):
        if not self.symbols:
            raise ValueError("alphabet must be nonempty")
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if BLANK_GLYPH in self.symbols:
            raise ValueError(f"the blank token {BLANK_GLYPH!r} is reserved")
        if len(self.symbols) > 250:
            raise ValueError("alphabet too large (max 250 symbols)")
        for s in self.symbols:
            if not isinstance(s, str) or not s:
                raise ValueError(f"bad symbol {s!r}")

    @classmethod
    def of(cls, *symbols: str) -> "Alphabet":
        return cls(tuple(symbols))

    def index(self, symbol: str) -> int:
        try:
            return self.symbols.index(symbol)
        except ValueError:
            raise UnknownSymbol(symbol) from None

    def symbol(self, code: int) -> str:
        return self.symbols[code]

    def __len__(self) -> int:
        return len(self.symbols)

    def __contains__(self, symbol: object) -> bool:
        return symbol in self.symbols

    def __iter__(self) -> Iterator[str]:
        return iter(self.symbols)


@dataclass(frozen=True)
class PartialWord:
    """One period of a q-periodic word over alphabet codes, 0xFF = blank."""

    period: int
    cells: bytes

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")
        if len(self.cells) != self.period:
            raise ValueError("cells length must equal the period")

    @classmethod
    def blank(cls, period: int) -> "PartialWord":
        return cls(period, bytes([BLANK]) * period)

    @classmethod
    def from_symbols(cls, alphabet: Alphabet, tokens: Sequence[str | None]) -> "PartialWord":
        """Build from symbol tokens; None or the blank glyph mean blank."""
        codes = bytearray()
        for tok in tokens:
            if tok is None or tok == BLANK_GLYPH:
                codes.append(BLANK)
            else:
                codes.append(alphabet.index(tok))
        return cls(len(codes), bytes(codes))

    def cell(self, i: int) -> int:
        return self.cells[i % self.period]

    def is_blank(self, i: int) -> bool:
        return self.cells[i % self.period] == BLANK

    @property
    def fully_defined(self) -> bool:
        return BLANK not in self.cells

    @property
    def defined_count(self) -> int:
        return self.period - sum(_kernels.blank_mask(self.cells))

    def shifted(self, s: int) -> "PartialWord":
        """The shifted word sigma^s w, i.e. (i -> w(i + s))."""
        s %= self.period
        if s == 0:
            return self
        return PartialWord(self.period, self.cells[s:] + self.cells[:s])

    def tiled(self, q: int) -> "PartialWord":
        """Reinterpret with the larger period q (period must divide q)."""
        if q % self.period != 0:
            raise ValueError(f"{self.period} does not divide {q}")
        return PartialWord(q, self.cells * (q // self.period))

    def blank_residues(self) -> tuple[int, ...]:
        """Blank positions within [0, period)."""
        out = []
        pos = self.cells.find(BLANK)
        while pos >= 0:
            out.append(pos)
            pos = self.cells.find(BLANK, pos + 1)
        return tuple(out)

    def blanks_in(self, lo: int, hi: int) -> list[int]:
        """All blank positions in [lo, hi), by modular indexing."""
        residues = self.blank_residues()
        out = []
        q = self.period
        for base in range(lo - lo % q, hi, q):
            for r in residues:
                i = base + r
                if lo <= i < hi:
                    out.append(i)
        return sorted(out)

    def render(self, alphabet: Alphabet, lo: int = 0, hi: int | None = None) -> str:
        """Text form of the window [lo, hi); defaults to one period."""
        if hi is None:
            lo, hi = 0, self.period
        parts = []
        for i in range(lo, hi):
            c = self.cell(i)
            parts.append(BLANK_GLYPH if c == BLANK else alphabet.symbol(c))
        return "".join(parts)

    def refines(self, other: "PartialWord") -> bool:
        """True if this word agrees with `other` on all its defined cells.

        This is the fill order: self carries at least the data of other.
        Periods must be compatible (other.period divides self.period).
        """
        if self.period % other.period != 0:
            return False
        wide = other.tiled(self.period)
        return all(b == BLANK or a == b for a, b in zip(self.cells, wide.cells))


def word_tokens(word: PartialWord, alphabet: Alphabet) -> list[str | None]:
    """Symbol tokens of one period, None at blanks."""
    return [None if c == BLANK else alphabet.symbol(c) for c in word.cells]
