"""Shift-residue parts of a schedule, their filled blocks, and the centered
block family used as a conjugacy invariant.

A part is the closure of an arithmetic-progression piece of the orbit; at
the schedule level it is labeled by a shift residue and represented by the
shifted level-t skeleton together with the shifted deep word. Identity of
parts is equality of deep words, the finest finite test available.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import _kernels
from .spec import ToeplitzSpec, level_word
from .verdicts import Verdict, no, yes
from .words import PartialWord


@dataclass(frozen=True)
class PartDescriptor:
    """One part: shift residue plus its level-t and deep skeleton data."""

    level: int
    residue: int
    skeleton_t: PartialWord
    deep_word: PartialWord

    def __post_init__(self):
        if not self.deep_word.refines(self.skeleton_t):
            raise ValueError("deep word must refine the level skeleton")


@lru_cache(maxsize=256)
def _deep_period(spec: ToeplitzSpec) -> int:
    return _kernels.smallest_period(spec.deep_word.cells)


def _canonical_residue(spec: ToeplitzSpec, t: int, r: int) -> int:
    """Least shift residue whose descriptor has the same deep word."""
    p = spec.periods[t]
    return r % min(_deep_period(spec), p)


def _descriptor(spec: ToeplitzSpec, t: int, r: int) -> PartDescriptor:
    return PartDescriptor(
        level=t,
        residue=r,
        skeleton_t=level_word(spec, t).shifted(r),
        deep_word=spec.deep_word.shifted(r),
    )


def parts(spec: ToeplitzSpec, t: int) -> list[PartDescriptor]:
    """Descriptors for shift residues 0..p_t-1, deduplicated by deep word.

    Residues give equal deep words exactly when they agree modulo the
    smallest cyclic period of the deep word, so the distinct classes are the
    least representatives below min(d, p_t). The count equals p_t in the
    essential case (all p_t shifts of the deep word pairwise distinct).
    """
    spec.check_level(t, low=1)
    p = spec.periods[t]
    reps = min(_deep_period(spec), p)
    return [_descriptor(spec, t, r) for r in range(reps)]


def parts_star(spec: ToeplitzSpec, t: int) -> list[tuple[PartDescriptor, int]]:
    """Parts whose skeleton has a blank at -1 and a filled cell at 0, paired
    with the length of the filled block starting at 0.

    These are in bijection with the maximal filled blocks of one skeleton
    period.
    """
    out = []
    for desc in parts(spec, t):
        s = desc.skeleton_t
        if s.is_blank(-1) and not s.is_blank(0):
            out.append((desc, _kernels.first_blank_from(s.cells, 0)))
    return out


def chi(spec: ToeplitzSpec, t: int) -> list[PartDescriptor]:
    """Parts recentered on filled blocks longer than the previous period.

    Each qualifying block-anchored part is shifted by half its block length,
    so the block straddles the origin; the residue is reduced to its
    canonical representative. At t = 1 the threshold is p_0 = 1.
    """
    spec.check_level(t, low=1)
    p = spec.periods[t]
    threshold = spec.periods[t - 1]
    seen = set()
    out = []
    for desc, n in parts_star(spec, t):
        if n <= threshold:
            continue
        r = _canonical_residue(spec, t, (desc.residue + n // 2) % p)
        if r not in seen:
            seen.add(r)
            out.append(_descriptor(spec, t, r))
    out.sort(key=lambda d: d.residue)
    return out


def gap_check(spec: ToeplitzSpec, t: int, c: int) -> Verdict:
    """Check the block-length dichotomy: every filled-block length at level t
    is either <= p_{t-1} or >= p_{t-1} + 2c.
    """
    spec.check_level(t, low=2)
    if c < 1:
        raise ValueError(f"need c >= 1, got {c}")
    prev = spec.periods[t - 1]
    lengths = [(desc.residue, n) for desc, n in parts_star(spec, t)]
    for residue, n in lengths:
        if prev < n < prev + 2 * c:
            return no((residue, n), f"block of length {n} at residue {residue} lies in ({prev}, {prev + 2 * c})")
    return yes(tuple(lengths), f"all block lengths avoid ({prev}, {prev + 2 * c})")


def filled_block_lengths(word: PartialWord) -> list[int]:
    """Lengths of maximal filled blocks in one cyclic period.

    A fully filled word has no blocks in this sense (no delimiting blank);
    the all-blank word has none either.
    """
    mask = _kernels.blank_mask(word.cells)
    if 1 not in mask:
        return []
    q = word.period
    out = []
    run = 0
    start = mask.index(1)
    for i in range(start, start + q):
        if mask[i % q]:
            if run:
                out.append(run)
            run = 0
        else:
            run += 1
    if run:
        out.append(run)
    return out
