"""Block-code witnesses and conjugacy decisions at a finite horizon.

The central primitive pairs aligned length-p blocks of two deep words and
tries to unify the pairing into an injective partial map. A Yes verdict is
always an exact witness: re-applying the map blockwise reproduces the target
word cell for cell. A No only means no witness exists at this horizon and
alignment; aggregates say "up to horizon" accordingly.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Mapping, Sequence

from . import _kernels
from .analysis import oxtoby_offsets
from .errors import NotABijection, RelabelNotRepresentable, StructureMismatch
from .parts import PartDescriptor, chi
from .spec import FillStep, ToeplitzSpec
from .verdicts import Status, Verdict, no, unknown, yes
from .words import BLANK_GLYPH, Alphabet


@dataclass(frozen=True)
class BlockMap:
    """Partial injective map between length-p blocks, the finite witness of a
    blockwise symbol permutation restricted to occurring blocks."""

    level: int
    block_len: int
    pairs: tuple[tuple[bytes, bytes], ...]

    def as_dict(self) -> dict[bytes, bytes]:
        return dict(self.pairs)

    def apply_cells(self, cells: bytes) -> bytes:
        """Apply blockwise; every block of `cells` must occur as a source."""
        p = self.block_len
        table = self.as_dict()
        out = bytearray()
        for k in range(len(cells) // p):
            block = cells[k * p : (k + 1) * p]
            try:
                out += table[block]
            except KeyError:
                raise ValueError(f"block at index {k} not in the witness map") from None
        return bytes(out)

    def inverse(self) -> "BlockMap":
        return BlockMap(self.level, self.block_len, tuple(sorted((d, s) for s, d in self.pairs)))

    def render(self, alphabet: Alphabet) -> list[tuple[str, str]]:
        def txt(block: bytes) -> str:
            return "".join(
                BLANK_GLYPH if c == _kernels.BLANK else alphabet.symbol(c) for c in block
            )

        return [(txt(s), txt(d)) for s, d in self.pairs]


def _require_same_structure(x: ToeplitzSpec, y: ToeplitzSpec) -> None:
    if x.alphabet != y.alphabet:
        raise StructureMismatch("specs use different alphabets")
    if x.structure != y.structure:
        raise StructureMismatch(
            f"period structures differ: {x.periods} vs {y.periods}"
        )


def _rotate(cells: bytes, s: int) -> bytes:
    s %= len(cells)
    return cells[s:] + cells[:s] if s else cells


def _infer_cells(xc: bytes, yc: bytes, p: int, level: int, horizon: int) -> Verdict:
    """Unify the aligned blockwise pairing of two equal-period words."""
    mis = _kernels.blank_misalign(xc, yc)
    if mis >= 0:
        k = mis // p
        return no(("blank-misalign", k), f"hole patterns disagree inside block {k} (cell {mis})")
    code, k, table = _kernels.unify_blocks(xc, yc, p)
    if code == _kernels.UNIFY_TARGET_CONFLICT:
        return no(("conflict", k), f"equal source blocks force different targets at block {k}")
    if code == _kernels.UNIFY_NOT_INJECTIVE:
        return no(("not-injective", k), f"distinct sources share a fully defined target at block {k}")
    if code == _kernels.UNIFY_AMBIGUOUS:
        return unknown(
            f"distinct sources share a blank-carrying target near block {k}; "
            "injectivity undecidable at this horizon",
            horizon=horizon,
        )
    bm = BlockMap(level, p, tuple(sorted(table.items())))
    return yes(bm, f"{len(bm.pairs)} block pairs unify")


def infer_block_map(x: ToeplitzSpec, y: ToeplitzSpec, t: int) -> Verdict:
    """Try to exhibit y's deep word as a blockwise image of x's at level t."""
    _require_same_structure(x, y)
    x.check_level(t, low=1)
    return _infer_cells(
        x.deep_word.cells, y.deep_word.cells, x.periods[t], t, x.horizon
    )


# ---------------------------------------------------------------------------
# generators

def relabel(
    spec: ToeplitzSpec, t: int, rho: Mapping[int, Mapping[str, str]]
) -> ToeplitzSpec:
    """Relabel every cell by a residue-indexed family of alphabet bijections:
    the symbol at absolute position i becomes rho[i mod p_t](symbol), so the
    induced point is exactly the blockwise image of the original under the
    coordinatewise permutation of length-p_t blocks.

    Bijections may be given partially; unmentioned symbols map to themselves
    (the completed map must still be a bijection). A fill step coarser than
    p_t covers several residues mod p_t at once; the relabeling must send its
    symbol to one common value on that class, otherwise no schedule over the
    same period structure realizes the image and RelabelNotRepresentable is
    raised. Period structure unchanged.
    """
    spec.check_level(t, low=1)
    p = spec.periods[t]
    n = len(spec.alphabet)
    identity = bytes(range(n))
    tables = [identity] * p
    for r, mapping in rho.items():
        if not 0 <= int(r) < p:
            raise ValueError(f"residue {r} outside [0, {p})")
        perm = list(range(n))
        for src, dst in mapping.items():
            perm[spec.alphabet.index(src)] = spec.alphabet.index(dst)
        if sorted(perm) != list(range(n)):
            raise NotABijection(f"relabeling at residue {r} is not a bijection")
        tables[int(r)] = bytes(perm)
    fills = []
    for step in spec.fills:
        assign = {}
        for r, code in step.assign:
            if step.modulus % p == 0:
                assign[r] = tables[r % p][code]
            else:
                images = {tables[j][code] for j in range(r, p, step.modulus)}
                if len(images) > 1:
                    raise RelabelNotRepresentable(step.level, r)
                assign[r] = images.pop()
        fills.append(FillStep.from_mapping(step.level, step.modulus, assign))
    return ToeplitzSpec(spec.alphabet, spec.structure, tuple(fills))


def shift_spec(spec: ToeplitzSpec, a: int) -> ToeplitzSpec:
    """Re-anchor the schedule so every level word is shifted by a."""
    fills = []
    for step in spec.fills:
        assign = {(r - a) % step.modulus: code for r, code in step.assign}
        fills.append(FillStep.from_mapping(step.level, step.modulus, assign))
    return ToeplitzSpec(spec.alphabet, spec.structure, tuple(fills))


# ---------------------------------------------------------------------------
# searches and relations

def _blank_match_offsets(x: ToeplitzSpec, y: ToeplitzSpec) -> set[int]:
    """Shifts s with blank(y deep word shifted by s) == blank(x deep word)."""
    mx = _kernels.blank_mask(x.deep_word.cells)
    my = _kernels.blank_mask(y.deep_word.cells)
    return set(_kernels.cyclic_match_offsets(my, mx))


def dkl_search(
    x: ToeplitzSpec, y: ToeplitzSpec, t_min: int = 1, t_max: int | None = None
) -> tuple[int, int, BlockMap] | None:
    """First (t, a) in lexicographic order such that the deep word of y
    shifted by a is a blockwise image of x's at level t; None if the grid up
    to t_max is exhausted (not a proof of non-conjugacy).
    """
    _require_same_structure(x, y)
    if t_max is None:
        t_max = x.horizon
    x.check_level(t_min, low=1)
    x.check_level(t_max, low=t_min)
    candidates = _blank_match_offsets(x, y)
    xc = x.deep_word.cells
    yc = y.deep_word.cells
    for t in range(t_min, t_max + 1):
        p = x.periods[t]
        for a in range(p):
            if a not in candidates:
                continue
            v = _infer_cells(xc, _rotate(yc, a), p, t, x.horizon)
            if v.is_yes:
                return (t, a, v.witness)
    return None


def parts_dp(a: PartDescriptor, b: PartDescriptor, t: int) -> Verdict:
    """Are two parts blockwise images of each other at level t?

    The deep words are compared under every block-aligned rotation: a part is
    the closure of an arithmetic progression of shifts, so its deep word is
    canonical only up to shifts by multiples of p_t.
    """
    if a.level != t or b.level != t:
        raise StructureMismatch(f"descriptors at levels {a.level}, {b.level}; expected {t}")
    if a.deep_word.period != b.deep_word.period or a.skeleton_t.period != b.skeleton_t.period:
        raise StructureMismatch("descriptors come from different period structures")
    p = a.skeleton_t.period
    big = a.deep_word.period
    xc = a.deep_word.cells
    yc = b.deep_word.cells
    saw_unknown = False
    first_no: Verdict | None = None
    for m in range(big // p):
        v = _infer_cells(xc, _rotate(yc, m * p), p, t, t)
        if v.is_yes:
            return yes((m, v.witness), f"block map after rotation by {m} blocks")
        if v.is_unknown:
            saw_unknown = True
        elif first_no is None:
            first_no = v
    if saw_unknown:
        return unknown("no exact witness, and some rotation was undecidable", horizon=t)
    assert first_no is not None
    return no(first_no.witness, "no block rotation admits a block map")


def dp_fin(
    a_set: Sequence[PartDescriptor], b_set: Sequence[PartDescriptor], t: int
) -> Verdict:
    """Do two finite families of parts induce the same equivalence classes?

    Yes iff every member of one family is blockwise-equivalent to a member of
    the other, both ways; undecided pairs propagate to Unknown.
    """
    rows = [[parts_dp(a, b, t) for b in b_set] for a in a_set]
    a_yes = [any(v.is_yes for v in row) for row in rows]
    b_yes = [any(row[j].is_yes for row in rows) for j in range(len(b_set))]
    if all(a_yes) and all(b_yes):
        pairing = sorted(
            (a_set[i].residue, next(b_set[j].residue for j, v in enumerate(rows[i]) if v.is_yes))
            for i in range(len(a_set))
        )
        return yes(tuple(pairing), "class sets coincide")
    for i, row in enumerate(rows):
        if not a_yes[i] and all(v.is_no for v in row):
            return no(("left", a_set[i].residue), f"left part at residue {a_set[i].residue} matches nothing")
    for j in range(len(b_set)):
        if not b_yes[j] and all(rows[i][j].is_no for i in range(len(a_set))):
            return no(("right", b_set[j].residue), f"right part at residue {b_set[j].residue} matches nothing")
    return unknown("class matching blocked by undecided pairs", horizon=t)


def chi_equiv(x: ToeplitzSpec, y: ToeplitzSpec, t: int) -> Verdict:
    """Compare the centered long-block families of two specs at level t."""
    _require_same_structure(x, y)
    x.check_level(t, low=2)
    return dp_fin(chi(x, t), chi(y, t), t)


def f_t(x: ToeplitzSpec, y: ToeplitzSpec, t_level: int) -> Verdict:
    """Finite-level relation: do piece-aligned shifts of the two schedules
    admit a blockwise witness at level t_level?

    Searches all shift pairs (a, b) whose shifted schedules have every
    aligned interval a piece, pruned by hole-pattern compatibility. A part
    contains all block-aligned shifts of its representative, so one side of
    the grid must range over the whole deep period; shifting both sides by
    p_t preserves witnesses, which makes a in [0, p_t), b in [0, p_T)
    exhaustive.
    """
    _require_same_structure(x, y)
    x.check_level(t_level, low=1)
    p = x.periods[t_level]
    big = x.periods[-1]
    offs_x = oxtoby_offsets(x, t_level)
    offs_y = oxtoby_offsets(y, t_level)
    valid_a = [a for a in range(p) if (-a) % p in offs_x]
    valid_b = [b for b in range(big) if (-b) % p in offs_y]
    if not valid_a or not valid_b:
        side = "left" if not valid_a else "right"
        return no(("no-aligned-shift", side), f"no piece-aligned shift of the {side} spec at level {t_level}")
    deltas = _blank_match_offsets(x, y)
    xc = x.deep_word.cells
    yc = y.deep_word.cells
    saw_unknown = False
    for a in valid_a:
        xa = _rotate(xc, a)
        for b in valid_b:
            if (b - a) % big not in deltas:
                continue
            v = _infer_cells(xa, _rotate(yc, b), p, t_level, x.horizon)
            if v.is_yes:
                return yes((a, b, v.witness), f"witness at shifts a={a}, b={b}")
            if v.is_unknown:
                saw_unknown = True
    if saw_unknown:
        return unknown("grid exhausted with undecidable cells", horizon=x.horizon)
    return no(
        ("grid-exhausted", len(valid_a), len(valid_b)),
        f"no witness on the {len(valid_a)}x{len(valid_b)} piece-aligned shift grid",
    )


# ---------------------------------------------------------------------------
# aggregate report

AGGREGATE_CONJUGATE = "ConjugateWithWitness"
AGGREGATE_NOT_CONJUGATE = "NotConjugateUpToHorizon"
AGGREGATE_UNKNOWN = "Unknown"


@dataclass(frozen=True)
class ConjugacyReport:
    t_min: int
    t_max: int
    horizon: int
    ft_verdicts: tuple[tuple[int, Verdict], ...]
    chi_verdicts: tuple[tuple[int, Verdict], ...]
    dkl: tuple[int, int, BlockMap] | None
    witness_verified: bool
    aggregate: str

    def to_document(self, alphabet: Alphabet) -> dict:
        def vdoc(v: Verdict) -> dict:
            out = {"status": v.status.value, "detail": v.detail}
            if v.status is Status.YES and isinstance(v.witness, tuple):
                plain = [w for w in v.witness if isinstance(w, int)]
                if plain:
                    out["shifts"] = plain
            return out

        doc: dict = {
            "levels": list(range(self.t_min, self.t_max + 1)),
            "f_t": {str(t): vdoc(v) for t, v in self.ft_verdicts},
            "chi_equiv": {str(t): vdoc(v) for t, v in self.chi_verdicts},
            "aggregate": self.aggregate,
            "disclaimer": (
                f"verdicts cover levels {self.t_min}..{self.t_max} of a horizon-{self.horizon} "
                "schedule; negative results are not proofs beyond the horizon"
            ),
        }
        if self.dkl is not None:
            t, a, bm = self.dkl
            doc["witness"] = {
                "level": t,
                "shift": a,
                "verified": self.witness_verified,
                "map": [[s, d] for s, d in bm.render(alphabet)],
            }
        else:
            doc["witness"] = None
        return doc


def _thread_count() -> int:
    try:
        n = int(os.environ.get("OXTOBY_LAB_THREADS", "1"))
    except ValueError:
        return 1
    return max(1, n)


def verify_witness(x: ToeplitzSpec, y: ToeplitzSpec, t: int, a: int, bm: BlockMap) -> bool:
    """Re-apply the witness blockwise and compare cell-by-cell."""
    try:
        image = bm.apply_cells(x.deep_word.cells)
    except ValueError:
        return False
    return image == _rotate(y.deep_word.cells, a)


def conjugacy_test(
    x: ToeplitzSpec, y: ToeplitzSpec, t_min: int = 1, t_max: int | None = None
) -> ConjugacyReport:
    """Run the per-level relations plus the anchored search and aggregate.

    ConjugateWithWitness requires the found block map to re-apply exactly;
    NotConjugateUpToHorizon requires every per-level verdict to be No with
    the anchored search exhausted; anything else is Unknown.
    """
    _require_same_structure(x, y)
    if t_max is None:
        t_max = x.horizon
    x.check_level(t_min, low=1)
    x.check_level(t_max, low=t_min)
    ft_levels = list(range(t_min, t_max + 1))
    chi_levels = [t for t in ft_levels if t >= 2]
    workers = _thread_count()
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            ft_vs = list(pool.map(lambda t: f_t(x, y, t), ft_levels))
            chi_vs = list(pool.map(lambda t: chi_equiv(x, y, t), chi_levels))
    else:
        ft_vs = [f_t(x, y, t) for t in ft_levels]
        chi_vs = [chi_equiv(x, y, t) for t in chi_levels]
    ft_verdicts = tuple(zip(ft_levels, ft_vs))
    chi_verdicts = tuple(zip(chi_levels, chi_vs))
    found = dkl_search(x, y, t_min, t_max)
    verified = False
    if found is not None:
        t, a, bm = found
        verified = verify_witness(x, y, t, a, bm)
    if found is not None and verified:
        aggregate = AGGREGATE_CONJUGATE
    elif (
        found is None
        and all(v.is_no for _t, v in ft_verdicts)
        and all(v.is_no for _t, v in chi_verdicts)
    ):
        aggregate = AGGREGATE_NOT_CONJUGATE
    else:
        aggregate = AGGREGATE_UNKNOWN
    return ConjugacyReport(
        t_min=t_min,
        t_max=t_max,
        horizon=x.horizon,
        ft_verdicts=ft_verdicts,
        chi_verdicts=chi_verdicts,
        dkl=found,
        witness_verified=verified,
        aggregate=aggregate,
    )
