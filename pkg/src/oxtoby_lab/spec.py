"""Fill schedules: validated specs, level words, windows, blank certificates.

A spec is the finite description of a Toeplitz-style construction: an
alphabet, a divisibility tower of periods, and per-level fill steps that
assign symbols to residues which are still blank. Everything downstream
(holes, parts, conjugacy searches) reads the level words computed here.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Mapping

from .errors import (
    FillOnFilledPosition,
    LevelOutOfRange,
    NonDividingPeriods,
    SpecFormatError,
    UnknownSymbol,
)
from .words import BLANK, Alphabet, PartialWord


@dataclass(frozen=True)
class PeriodStructure:
    """Divisibility tower p_0 = 1 | p_1 | ... | p_T."""

    periods: tuple[int, ...]

    def __post_init__(self):
        ps = self.periods
        if not ps or ps[0] != 1:
            raise NonDividingPeriods(f"period structure must start at 1, got {ps!r}")
        for a, b in zip(ps, ps[1:]):
            if b <= a:
                raise NonDividingPeriods(f"periods must be strictly increasing: {a} before {b}")
            if b % a != 0:
                raise NonDividingPeriods(f"{a} does not divide {b}")

    @property
    def horizon(self) -> int:
        return len(self.periods) - 1

    def __getitem__(self, t: int) -> int:
        return self.periods[t]


@dataclass(frozen=True)
class FillStep:
    """One level of the schedule: symbol assignments to blank residues.

    `assign` maps residues in [0, modulus) to alphabet codes and is stored
    sorted by residue.
    """

    level: int
    modulus: int
    assign: tuple[tuple[int, int], ...]

    def __post_init__(self):
        prev = -1
        for r, _code in self.assign:
            if not 0 <= r < self.modulus:
                raise SpecFormatError(f"level {self.level}: residue {r} outside [0, {self.modulus})")
            if r <= prev:
                raise SpecFormatError(f"level {self.level}: residues must be sorted and distinct")
            prev = r

    @classmethod
    def from_mapping(cls, level: int, modulus: int, assign: Mapping[int, int]) -> "FillStep":
        return cls(level, modulus, tuple(sorted(assign.items())))

    def as_dict(self) -> dict[int, int]:
        return dict(self.assign)


def apply_fill(word: PartialWord, step: FillStep) -> PartialWord:
    """Tile `word` to the step's modulus and write the assigned symbols.

    Every assigned residue must be blank; an empty step is just the
    reinterpretation of the word with the larger period.
    """
    tiled = word.tiled(step.modulus)
    if not step.assign:
        return tiled
    cells = bytearray(tiled.cells)
    for r, code in step.assign:
        if cells[r] != BLANK:
            raise FillOnFilledPosition(step.level, r)
        cells[r] = code
    return PartialWord(step.modulus, bytes(cells))


@dataclass(frozen=True)
class ToeplitzSpec:
    """Validated construction data; immutable once built.

    The level words x_0..x_T are computed during validation and cached; they
    are the canonical skeletons every analysis works on.
    """

    alphabet: Alphabet
    structure: PeriodStructure
    fills: tuple[FillStep, ...]
    _level_words: tuple[PartialWord, ...] = field(init=False, repr=False, compare=False)
    _fill_levels: bytes = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        T = self.structure.horizon
        if T < 1:
            raise SpecFormatError("spec needs at least one fill level")
        if len(self.fills) != T:
            raise SpecFormatError(f"expected {T} fill steps, got {len(self.fills)}")
        if T > 250:
            raise SpecFormatError("horizon too deep (max 250 levels)")
        words = [PartialWord.blank(1)]
        for t, step in enumerate(self.fills, start=1):
            if step.level != t:
                raise SpecFormatError(f"fill steps out of order: expected level {t}, got {step.level}")
            if step.modulus != self.structure[t]:
                raise SpecFormatError(
                    f"level {t} modulus {step.modulus} != period {self.structure[t]}"
                )
            for _r, code in step.assign:
                if code >= len(self.alphabet):
                    raise UnknownSymbol(code)
            words.append(apply_fill(words[-1], step))
        levels = bytearray(self.structure[T])
        for step in self.fills:
            for r, _code in step.assign:
                for pos in range(r, len(levels), step.modulus):
                    levels[pos] = step.level
        object.__setattr__(self, "_level_words", tuple(words))
        object.__setattr__(self, "_fill_levels", bytes(levels))

    @property
    def horizon(self) -> int:
        return self.structure.horizon

    @property
    def periods(self) -> tuple[int, ...]:
        return self.structure.periods

    @property
    def deep_word(self) -> PartialWord:
        return self._level_words[-1]

    def fill_level_map(self) -> bytes:
        """Per-residue fill level over one deep period; 0 means unfilled."""
        return self._fill_levels

    def check_level(self, t: int, low: int = 0) -> None:
        if not low <= t <= self.horizon:
            raise LevelOutOfRange(t, self.horizon)


def level_word(spec: ToeplitzSpec, t: int) -> PartialWord:
    """The schedule skeleton x_t (x_0 is the all-blank word of period 1)."""
    spec.check_level(t)
    return spec._level_words[t]


def window(spec: ToeplitzSpec, t: int, lo: int, hi: int) -> str:
    """Rendered restriction x_t[lo, hi), using modular indexing."""
    spec.check_level(t)
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi})")
    return spec._level_words[t].render(spec.alphabet, lo, hi)


class CellStatus(Enum):
    CERTIFIED_FILLED = "filled"
    CERTIFIED_BLANK = "blank"
    UNDETERMINED = "undetermined"


def blank_certificate(spec: ToeplitzSpec, t: int) -> list[CellStatus]:
    """Per-residue certificate that x_t matches the true p_t-skeleton.

    A blank residue is certified blank when its residue class receives two
    distinct symbols at deeper levels: no completion of the schedule can make
    the class periodic, so the true skeleton is blank there as well. Blank
    residues without that evidence stay undetermined. When nothing is
    undetermined, x_t is the true skeleton for every completion.
    """
    spec.check_level(t)
    p = spec.structure[t]
    xt = spec._level_words[t]
    received: dict[int, set[int]] = {}
    for step in spec.fills[t:]:
        for r, code in step.assign:
            received.setdefault(r % p, set()).add(code)
    out = []
    for r in range(p):
        if xt.cells[r] != BLANK:
            out.append(CellStatus.CERTIFIED_FILLED)
        elif len(received.get(r, ())) >= 2:
            out.append(CellStatus.CERTIFIED_BLANK)
        else:
            out.append(CellStatus.UNDETERMINED)
    return out


# ---------------------------------------------------------------------------
# spec documents (JSON / TOML)

def validate_spec(doc: Mapping) -> ToeplitzSpec:
    """Build a spec from a parsed document, checking every invariant."""
    try:
        symbols = tuple(doc["alphabet"])
        periods = tuple(int(p) for p in doc["periods"])
        raw_fills = list(doc["fills"])
    except (KeyError, TypeError, ValueError) as exc:
        raise SpecFormatError(f"malformed spec document: {exc}") from exc
    alphabet = Alphabet(symbols)
    structure = PeriodStructure(periods)
    by_level: dict[int, dict[int, int]] = {}
    for entry in raw_fills:
        try:
            lvl = int(entry["level"])
            assign_raw = entry["assign"]
        except (KeyError, TypeError, ValueError) as exc:
            raise SpecFormatError(f"malformed fill entry {entry!r}") from exc
        if not 1 <= lvl <= structure.horizon:
            raise SpecFormatError(f"fill level {lvl} outside 1..{structure.horizon}")
        if lvl in by_level:
            raise SpecFormatError(f"duplicate fill entry for level {lvl}")
        assign = {}
        for key, sym in assign_raw.items():
            try:
                r = int(key)
            except ValueError as exc:
                raise SpecFormatError(f"residue key {key!r} is not an integer") from exc
            assign[r] = alphabet.index(sym)
        by_level[lvl] = assign
    fills = tuple(
        FillStep.from_mapping(t, structure[t], by_level.get(t, {}))
        for t in range(1, structure.horizon + 1)
    )
    return ToeplitzSpec(alphabet, structure, fills)


def spec_document(spec: ToeplitzSpec) -> dict:
    """Plain-data document for the spec, round-trips through validate_spec."""
    return {
        "alphabet": list(spec.alphabet.symbols),
        "periods": list(spec.periods),
        "fills": [
            {
                "level": step.level,
                "assign": {str(r): spec.alphabet.symbol(code) for r, code in step.assign},
            }
            for step in spec.fills
        ],
    }


def dumps_spec(spec: ToeplitzSpec) -> str:
    return json.dumps(spec_document(spec), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def load_spec(path: str | Path) -> ToeplitzSpec:
    """Read a spec file; .toml uses TOML, anything else is JSON."""
    path = Path(path)
    data = path.read_bytes()
    if path.suffix.lower() == ".toml":
        try:
            import tomllib  # type: ignore[import-not-found]
        except ImportError:
            import tomli as tomllib
        doc = tomllib.loads(data.decode("utf-8"))
    else:
        doc = json.loads(data.decode("utf-8"))
    return validate_spec(doc)


def save_spec(spec: ToeplitzSpec, path: str | Path) -> None:
    Path(path).write_text(dumps_spec(spec), encoding="utf-8")
