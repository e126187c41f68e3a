"""Hole structure of a schedule: fill levels, essential periods, the
generalized Oxtoby condition, pieces and piece-aligned offsets.

All verdicts here are statements about the canonical skeletons x_t. Whether
those coincide with the true skeletons of a completed sequence is what
`blank_certificate` reports; the verdicts themselves stay exact and
deterministic at the schedule level.
"""

from __future__ import annotations

from dataclasses import dataclass

from . import _kernels
from .spec import ToeplitzSpec, level_word
from .verdicts import Verdict, no, yes
from .words import PartialWord


@dataclass(frozen=True)
class Violation:
    """A concrete counterexample to the generalized Oxtoby condition."""

    level: int
    block_index: int
    hole_positions: tuple[int, ...]
    detail: str


def holes(word: PartialWord, lo: int, hi: int) -> set[int]:
    """Positions of blanks of the word inside [lo, hi)."""
    if lo > hi:
        raise ValueError(f"need lo <= hi, got [{lo}, {hi})")
    return set(word.blanks_in(lo, hi))


def fill_level(spec: ToeplitzSpec, i: int) -> int | None:
    """The level whose fill step covers position i; None if unfilled at horizon.

    Under a clean blank certificate this is the essential period index of the
    position: the least t with i in the p_t-periodic part.
    """
    lvl = spec.fill_level_map()[i % spec.periods[-1]]
    return lvl if lvl else None


def smallest_divisor_period(word: PartialWord) -> int:
    """Least divisor d of the period such that the cyclic word is d-periodic.

    Blank is compared like an ordinary symbol. The stored period is essential
    among divisors iff the result equals it.
    """
    return _kernels.smallest_period(word.cells)


def is_defined_on(spec: ToeplitzSpec, t: int, lo: int, hi: int) -> bool:
    """True if x_t has no blank in [lo, hi)."""
    spec.check_level(t)
    return not level_word(spec, t).blanks_in(lo, hi)


def check_gen_oxtoby(spec: ToeplitzSpec) -> Verdict:
    """Decide the generalized Oxtoby condition for the schedule.

    Schedule form: at every level t < T, the level-(t+1) step either fills
    all p_t-holes of an aligned interval [k p_t, (k+1) p_t) or none of them.
    One p_{t+1}-period suffices by periodicity. Violations are reported at
    the lexicographically first (t, k).
    """
    T = spec.horizon
    for t in range(1, T):
        p = spec.periods[t]
        hole_res = level_word(spec, t).blank_residues()
        if not hole_res:
            continue
        step = spec.fills[t]  # level t + 1
        filled_by_block: dict[int, list[int]] = {}
        for r, _code in step.assign:
            filled_by_block.setdefault(r // p, []).append(r)
        for k in sorted(filled_by_block):
            got = filled_by_block[k]
            if len(got) < len(hole_res):
                positions = tuple(k * p + r for r in hole_res)
                missing = sorted(set(positions) - set(got))
                detail = (
                    f"level {t + 1} fills holes {sorted(got)} of [{k * p}, {(k + 1) * p}) "
                    f"but leaves {missing}"
                )
                return no(Violation(t, k, positions, detail), detail)
    return yes({"levels_checked": list(range(1, T))}, f"whole-interval fills at levels 1..{T - 1}")


def is_piece(spec: ToeplitzSpec, a: int, t: int) -> Verdict:
    """Is [a, a + p_t) a piece: are its p_t-holes hole-synchronized at every
    deeper scheduled level?

    Equivalent schedule form: all p_t-holes in the interval share one fill
    level, or are all unfilled at horizon.
    """
    spec.check_level(t, low=1)
    p = spec.periods[t]
    interval_holes = level_word(spec, t).blanks_in(a, a + p)
    if not interval_holes:
        return yes((), "no holes in the interval")
    levels = {i: fill_level(spec, i) for i in interval_holes}
    distinct = set(levels.values())
    if len(distinct) == 1:
        lvl = next(iter(distinct))
        return yes(
            tuple(interval_holes),
            f"all holes share fill level {lvl if lvl is not None else 'unfilled'}",
        )
    by_level = sorted(levels.items(), key=lambda kv: (kv[1] is None, kv[1], kv[0]))
    lo_pos, lo_lvl = by_level[0]
    hi_pos, hi_lvl = by_level[-1]
    return no(
        (lo_pos, hi_pos),
        f"hole {lo_pos} filled at level {lo_lvl} but hole {hi_pos} at "
        f"{'horizon-unfilled' if hi_lvl is None else f'level {hi_lvl}'}",
    )


def oxtoby_offsets(spec: ToeplitzSpec, t: int) -> set[int]:
    """All a in [0, p_t) such that every interval [-a + k p_t, -a + (k+1) p_t)
    is a piece; one deep period of k suffices.
    """
    spec.check_level(t, low=1)
    p = spec.periods[t]
    deep_p = spec.periods[-1]
    out = set()
    for a in range(p):
        if all(is_piece(spec, -a + k * p, t).is_yes for k in range(deep_p // p)):
            out.add(a)
    return out
