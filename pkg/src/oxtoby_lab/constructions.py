"""Builders for the named example schedules.

`oxtoby_classic` fills the first and last sub-interval of each period with a
per-level constant symbol; `downarowicz_build` threads a sequence of language
words through a fixed doubling-staircase tower. Both produce schedules whose
fill steps cover whole aligned intervals, so the generalized Oxtoby condition
holds by construction (and is asserted in tests, not here).
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

from .errors import (
    BadRatio,
    BlankCountMismatch,
    DeadEnd,
    EmptyLanguage,
    LengthLawViolation,
)
from .spec import FillStep, PeriodStructure, ToeplitzSpec, apply_fill
from .words import BLANK, Alphabet, PartialWord

BINARY = Alphabet.of("0", "1")


def oxtoby_classic(
    num_levels: int,
    ratios: Sequence[int],
    symbols: Sequence[str] | None = None,
    alphabet: Alphabet = BINARY,
) -> ToeplitzSpec:
    """The classical first-and-last-interval schedule.

    Level t+1 multiplies the period by ratios[t] and fills every remaining
    hole of the first and last length-p_t sub-intervals with symbols[t].
    Defaults alternate "1", "0", "1", ... With any ratio >= 3 holes survive
    each level; ratio 2 fills the period completely at that level.
    """
    if num_levels < 1:
        raise ValueError("need at least one level")
    if len(ratios) != num_levels:
        raise ValueError(f"expected {num_levels} ratios, got {len(ratios)}")
    if symbols is None:
        symbols = [alphabet.symbols[t % 2] for t in range(1, num_levels + 1)]
    if len(symbols) != num_levels:
        raise ValueError(f"expected {num_levels} symbols, got {len(symbols)}")
    for r in ratios:
        if r < 2:
            raise BadRatio(r)
    periods = [1]
    for r in ratios:
        periods.append(periods[-1] * r)
    word = PartialWord.blank(1)
    fills = []
    for t in range(1, num_levels + 1):
        q = periods[t]
        prev = periods[t - 1]
        code = alphabet.index(symbols[t - 1])
        tiled = word.tiled(q)
        assign = {
            i: code
            for i in (*range(prev), *range(q - prev, q))
            if tiled.cells[i] == BLANK
        }
        step = FillStep.from_mapping(t, q, assign)
        word = apply_fill(word, step)
        fills.append(step)
    return ToeplitzSpec(alphabet, PeriodStructure(tuple(periods)), tuple(fills))


def staircase_periods(levels: int) -> tuple[int, ...]:
    """The doubling-staircase tower: p_t is the product of 2^(i+1), i <= t."""
    periods = [1]
    for t in range(1, levels + 1):
        periods.append(periods[-1] * 2 ** (t + 1))
    return tuple(periods)


def word_length_law(t: int) -> int:
    """Required length of the t-th threaded word: product of (2^i - 1)."""
    return prod(2**i - 1 for i in range(1, t + 1))


@dataclass(frozen=True)
class DownarowiczInput:
    """The sequence of binary words threaded through the staircase."""

    b_words: tuple[str, ...]

    def __post_init__(self):
        if not self.b_words:
            raise ValueError("need at least one word")
        for t, b in enumerate(self.b_words, start=1):
            want = word_length_law(t)
            if len(b) != want:
                raise LengthLawViolation(t, want, len(b))
            if set(b) - {"0", "1"}:
                raise ValueError(f"word b_{t} must be binary, got {b!r}")


def downarowicz_build(data: DownarowiczInput) -> ToeplitzSpec:
    """Thread the given words through the staircase tower.

    Level 1 writes b_1 at residue 0 of modulus 4. Level t+1 fills all blanks
    of one designated length-p_t sub-interval per period (left-aligned after
    an odd level, right-aligned after an even one) with the consecutive
    symbols of b_{t+1}. The blanks of that sub-interval number exactly
    len(b_{t+1}); the builder checks this ledger at every level.
    """
    words = data.b_words
    levels = len(words)
    periods = staircase_periods(levels)
    alphabet = BINARY
    word = PartialWord.blank(1)
    fills = []
    step = FillStep.from_mapping(1, periods[1], {0: alphabet.index(words[0])})
    word = apply_fill(word, step)
    fills.append(step)
    for t in range(1, levels):
        q = periods[t + 1]
        p_t = periods[t]
        b_next = words[t]
        tiled = word.tiled(q)
        lo = 0 if t % 2 == 1 else q - p_t
        targets = [i for i in range(lo, lo + p_t) if tiled.cells[i] == BLANK]
        if len(targets) != len(b_next):
            raise BlankCountMismatch(
                f"level {t + 1}: designated interval has {len(targets)} blanks, "
                f"word b_{t + 1} has length {len(b_next)}"
            )
        assign = {pos: alphabet.index(sym) for pos, sym in zip(targets, b_next)}
        step = FillStep.from_mapping(t + 1, q, assign)
        word = apply_fill(word, step)
        fills.append(step)
    return ToeplitzSpec(alphabet, PeriodStructure(periods), tuple(fills))


# ---------------------------------------------------------------------------
# languages of shifts of finite type

class _Sft:
    """Factor language of the binary shift of finite type avoiding the given
    words, with bi-extendability checked on the de Bruijn-style graph."""

    def __init__(self, forbidden: Iterable[str], alphabet: Sequence[str] = ("0", "1")):
        self.forbidden = sorted(set(forbidden))
        self.alphabet = tuple(alphabet)
        for f in self.forbidden:
            if not f or set(f) - set(self.alphabet):
                raise ValueError(f"bad forbidden word {f!r}")
        self.window = max((len(f) for f in self.forbidden), default=1)
        self.context = max(self.window - 1, 0)
        self._build_graph()

    def admissible(self, w: str) -> bool:
        return not any(f in w for f in self.forbidden)

    def _build_graph(self) -> None:
        ctx = self.context
        nodes = [""] if ctx == 0 else [
            w for w in self._all_words(ctx) if self.admissible(w)
        ]
        edges: dict[str, list[tuple[str, str]]] = {u: [] for u in nodes}
        for u in nodes:
            for s in self.alphabet:
                w = u + s
                if not self.admissible(w):
                    continue
                v = w[-ctx:] if ctx else ""
                edges[u].append((s, v))
        # forward-alive: nodes with arbitrarily long outgoing paths
        fwd = set(nodes)
        changed = True
        while changed:
            changed = False
            for u in list(fwd):
                if not any(v in fwd for _s, v in edges[u]):
                    fwd.discard(u)
                    changed = True
        # backward-alive: symmetric, via reversed edges
        rev: dict[str, list[str]] = {u: [] for u in nodes}
        for u in nodes:
            for _s, v in edges[u]:
                rev[v].append(u)
        bwd = set(nodes)
        changed = True
        while changed:
            changed = False
            for v in list(bwd):
                if not any(u in bwd for u in rev[v]):
                    bwd.discard(v)
                    changed = True
        self.nodes = nodes
        self.edges = edges
        self.forward_alive = fwd
        self.backward_alive = bwd
        if not (fwd & bwd):
            raise EmptyLanguage(f"no bi-infinite sequence avoids {self.forbidden}")

    def _all_words(self, length: int) -> list[str]:
        words = [""]
        for _ in range(length):
            words = [w + s for w in words for s in self.alphabet]
        return words

    def _extendable_to_context(self, w: str, forward: bool) -> bool:
        """Can w grow (to the right/left) into an admissible context word?"""
        ctx = self.context
        frontier = [w]
        while frontier:
            cur = frontier.pop()
            if len(cur) >= ctx:
                tail = cur[-ctx:] if forward else cur[:ctx]
                if ctx == 0:
                    return True
                if forward and tail in self.forward_alive:
                    return True
                if not forward and tail in self.backward_alive:
                    return True
                continue
            for s in self.alphabet:
                nxt = cur + s if forward else s + cur
                if self.admissible(nxt):
                    frontier.append(nxt)
        return ctx == 0

    def in_language(self, w: str) -> bool:
        """Is w a factor of some bi-infinite admissible sequence?"""
        if not self.admissible(w):
            return False
        if self.context == 0:
            return True
        if len(w) >= self.context:
            head = w[: self.context]
            tail = w[-self.context :]
            return head in self.backward_alive and tail in self.forward_alive
        return self._extendable_to_context(w, forward=True) and self._extendable_to_context(
            w, forward=False
        )

    def enumerate_language(self):
        """Nonempty language words in length-then-lexicographic order."""
        length = 1
        while True:
            found = False
            for w in self._all_words(length):
                if self.in_language(w):
                    found = True
                    yield w
            if not found:
                return
            length += 1

    def extend_to_length(self, prefix: str, target: int) -> str:
        """Grow a language word to the target length.

        Tries symbols in lexicographic order; once the suffix context is a
        forward-alive graph node the walk continues edge by edge without
        backtracking (a forward-alive state always has a forward-alive
        successor), so the cost is linear in the target length.
        """
        if len(prefix) > target:
            raise DeadEnd(f"prefix {prefix!r} longer than target {target}")
        ctx = self.context
        if ctx == 0:
            allowed = [s for s in self.alphabet if self.admissible(s)]
            if not allowed:
                raise DeadEnd("no admissible symbol")
            return prefix + allowed[0] * (target - len(prefix))
        if target < ctx:
            # words shorter than the context: bounded search
            stack = [prefix]
            while stack:
                cur = stack.pop()
                if len(cur) == target:
                    if self.in_language(cur):
                        return cur
                    continue
                for s in reversed(self.alphabet):
                    if self.admissible(cur + s):
                        stack.append(cur + s)
            raise DeadEnd(f"cannot extend {prefix!r} to length {target}")
        # phase 1: reach a forward-alive context state, lexicographically first
        base = None
        stack = [prefix]
        seen = set()
        while stack:
            cur = stack.pop()
            if len(cur) >= ctx and cur[-ctx:] in self.forward_alive:
                base = cur
                break
            if len(cur) >= target:
                continue
            for s in reversed(self.alphabet):
                nxt = cur + s
                if not self.admissible(nxt):
                    continue
                key = (len(nxt), nxt[-ctx:])
                if key not in seen:
                    seen.add(key)
                    stack.append(nxt)
        if base is None:
            raise DeadEnd(f"cannot extend {prefix!r} into the language")
        # phase 2: walk lex-least forward-alive successors
        word = list(base)
        state = base[-ctx:]
        while len(word) < target:
            for s, v in self.edges[state]:
                if v in self.forward_alive:
                    word.append(s)
                    state = v
                    break
            else:
                raise DeadEnd(f"state {state!r} lost forward aliveness")
        out = "".join(word)
        if not self.in_language(out):
            raise DeadEnd(f"prefix {prefix!r} is not left-extendable")
        return out


def language_words(forbidden: Iterable[str], t_max: int) -> list[str]:
    """Words b_1..b_t over the SFT avoiding `forbidden`, following the exact
    length law, with prefixes cycling round-robin through the length-lex
    enumeration of the language.
    """
    if t_max < 1:
        raise ValueError("t_max must be >= 1")
    sft = _Sft(forbidden)
    out = []
    enum = sft.enumerate_language()
    for t in range(1, t_max + 1):
        target = word_length_law(t)
        try:
            prefix = next(enum)
        except StopIteration:
            raise EmptyLanguage(f"language exhausted before t={t}") from None
        if len(prefix) > target:
            prefix = prefix[:target]
            if not sft.in_language(prefix):
                raise DeadEnd(f"truncated prefix {prefix!r} leaves the language")
        out.append(sft.extend_to_length(prefix, target))
    return out
