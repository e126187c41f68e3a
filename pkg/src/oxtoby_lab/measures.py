"""Frequency functionals and empirical cylinder measures, all in exact
rational arithmetic.

Base words are finite sequences of alphabet tokens; a string argument is
treated as a sequence of one-character tokens. No floats enter any value.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Mapping, Sequence

from .errors import (
    AllBlank,
    BadCongruenceParams,
    EmptyBase,
    InsufficientMeasureDepth,
)
from .spec import ToeplitzSpec, level_word
from .words import BLANK

Word = tuple[str, ...]


def _as_word(w: Sequence[str] | str) -> Word:
    if isinstance(w, str):
        return tuple(w)
    return tuple(w)


def freq_star(b0: Sequence[str] | str, b: Sequence[str] | str) -> Fraction:
    """Occurrence frequency of b in the finite word b0.

    Counts start positions m with 0 <= m <= len(b0) - len(b), so a pattern
    longer than the base occurs zero times.
    """
    base = _as_word(b0)
    pat = _as_word(b)
    if not base:
        raise EmptyBase("base word is empty")
    if not pat:
        raise ValueError("pattern word must be nonempty")
    n, l = len(base), len(pat)
    count = sum(1 for m in range(n - l + 1) if base[m : m + l] == pat)
    return Fraction(count, n)


def freq_double_star(
    b0: Sequence[str] | str, b: Sequence[str] | str, k: int, j: int
) -> Fraction:
    """Occurrence frequency restricted to start positions m = j (mod k).

    k must be odd and 0 <= j < k. Summing over all j recovers freq_star.
    """
    if k < 1 or k % 2 == 0 or not 0 <= j < k:
        raise BadCongruenceParams(k, j)
    base = _as_word(b0)
    pat = _as_word(b)
    if not base:
        raise EmptyBase("base word is empty")
    if not pat:
        raise ValueError("pattern word must be nonempty")
    n, l = len(base), len(pat)
    count = sum(
        1 for m in range(n - l + 1) if m % k == j and base[m : m + l] == pat
    )
    return Fraction(count, n)


class CylinderMeasure:
    """Rational word frequencies up to a fixed length.

    Values lie in [0, 1] and each covered length carries total mass one.
    Kolmogorov-style consistency across lengths holds for measures read off
    fully filled words; `consistency_violations` reports where it fails
    (empirical measures over words with blanks renormalize per length, which
    can break it).
    """

    def __init__(self, freq: Mapping[Word, Fraction], max_len: int):
        if max_len < 1:
            raise ValueError("max_len must be >= 1")
        table: dict[Word, Fraction] = {}
        per_len: dict[int, Fraction] = {}
        for word, value in freq.items():
            word = _as_word(word)
            value = Fraction(value)
            if not word or len(word) > max_len:
                raise ValueError(f"word {word!r} has bad length for max_len={max_len}")
            if not 0 <= value <= 1:
                raise ValueError(f"frequency of {word!r} is {value}, outside [0, 1]")
            if value:
                table[word] = value
                per_len[len(word)] = per_len.get(len(word), Fraction(0)) + value
        for l in range(1, max_len + 1):
            if per_len.get(l, Fraction(0)) != 1:
                raise ValueError(f"length-{l} frequencies sum to {per_len.get(l, 0)}, not 1")
        self.freq = table
        self.max_len = max_len

    def value(self, word: Sequence[str] | str) -> Fraction:
        return self.freq.get(_as_word(word), Fraction(0))

    def words_of_length(self, l: int) -> list[Word]:
        return sorted(w for w in self.freq if len(w) == l)

    def consistency_violations(self) -> list[Word]:
        """Words b with mu([b]) != sum over s of mu([b.s])."""
        out = []
        suffix_sums: dict[Word, Fraction] = {}
        for word, value in self.freq.items():
            if len(word) > 1:
                prefix = word[:-1]
                suffix_sums[prefix] = suffix_sums.get(prefix, Fraction(0)) + value
        for word, value in self.freq.items():
            if len(word) < self.max_len and suffix_sums.get(word, Fraction(0)) != value:
                out.append(word)
        return sorted(out)


def empirical_measure(spec: ToeplitzSpec, t: int, max_len: int) -> CylinderMeasure:
    """Cyclic factor frequencies of the level word x_t.

    Windows overlapping a blank are dropped and the surviving counts are
    renormalized per length; blanks are schedule bookkeeping, not symbols of
    the subshift.
    """
    spec.check_level(t)
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    word = level_word(spec, t)
    need = word.period + max_len - 1
    reps = -(-need // word.period)
    cells = (word.cells * reps)[:need]
    symbols = spec.alphabet.symbols
    freq: dict[Word, Fraction] = {}
    for l in range(1, max_len + 1):
        counts: dict[Word, int] = {}
        total = 0
        for i in range(word.period):
            win = cells[i : i + l]
            if BLANK in win:
                continue
            total += 1
            key = tuple(symbols[c] for c in win)
            counts[key] = counts.get(key, 0) + 1
        if total == 0:
            raise AllBlank(f"x_{t} has no fully defined factor of length {l}")
        for key, c in counts.items():
            freq[key] = Fraction(c, total)
    return CylinderMeasure(freq, max_len)


@dataclass(frozen=True)
class WeightScheme:
    """Positive rational weights on odd congruence moduli, partial sum <= 1."""

    weights: tuple[tuple[int, Fraction], ...]

    def __post_init__(self):
        total = Fraction(0)
        seen = set()
        for k, c in self.weights:
            if k < 1 or k % 2 == 0 or k in seen:
                raise ValueError(f"moduli must be distinct odd integers, got {k}")
            if c <= 0:
                raise ValueError(f"weight c_{k} must be positive")
            seen.add(k)
            total += c
        if total > 1:
            raise ValueError(f"weights sum to {total} > 1")

    @classmethod
    def default(cls, k_max: int) -> "WeightScheme":
        """The geometric choice c_(2i+1) = 2^-(i+1), truncated at k_max."""
        if k_max < 1 or k_max % 2 == 0:
            raise ValueError("k_max must be a positive odd integer")
        ws = tuple(
            (2 * i + 1, Fraction(1, 2 ** (i + 1))) for i in range((k_max + 1) // 2)
        )
        return cls(ws)

    @property
    def k_max(self) -> int:
        return max(k for k, _c in self.weights)

    @property
    def retained_mass(self) -> Fraction:
        return sum((c for _k, c in self.weights), Fraction(0))


def _support_words(b0: Word, mu: CylinderMeasure, l: int) -> list[Word]:
    words = {b0[m : m + l] for m in range(len(b0) - l + 1)}
    words.update(mu.words_of_length(l))
    return sorted(words)


def d_star(
    b0: Sequence[str] | str, mu: CylinderMeasure, max_len: int
) -> tuple[Fraction, Fraction]:
    """Weighted total variation between the factor frequencies of b0 and mu,
    truncated at word length max_len, with the exact tail bound 2^(1-L).

    Word weight is 2^-len(b); words where both sides vanish contribute
    nothing, so the sum runs over the union of supports.
    """
    base = _as_word(b0)
    if not base:
        raise EmptyBase("base word is empty")
    if max_len > mu.max_len:
        raise InsufficientMeasureDepth(max_len, mu.max_len)
    value = Fraction(0)
    for l in range(1, max_len + 1):
        weight = Fraction(1, 2**l)
        for w in _support_words(base, mu, l):
            value += abs(freq_star(base, w) - mu.value(w)) * weight
    tail = Fraction(2, 2**max_len)
    return value, tail


def d_double_star(
    b0: Sequence[str] | str,
    mu: CylinderMeasure,
    max_len: int,
    weights: WeightScheme,
) -> tuple[Fraction, Fraction]:
    """Congruence-refined variant of d_star: compares the arithmetic-
    progression frequencies against mu([b])/k, weighted by c_k 2^-len(b).

    The tail bound adds the length tail (scaled by the retained weight mass)
    and twice the dropped weight mass.
    """
    base = _as_word(b0)
    if not base:
        raise EmptyBase("base word is empty")
    if max_len > mu.max_len:
        raise InsufficientMeasureDepth(max_len, mu.max_len)
    value = Fraction(0)
    for l in range(1, max_len + 1):
        words = _support_words(base, mu, l)
        for k, c_k in weights.weights:
            weight = c_k / 2**l
            for w in words:
                target = mu.value(w) / k
                for j in range(k):
                    value += abs(freq_double_star(base, w, k, j) - target) * weight
    retained = weights.retained_mass
    tail = Fraction(2, 2**max_len) * retained + 2 * (1 - retained)
    return value, tail


def density_profile(
    spec: ToeplitzSpec, symbol: str, t_list: Sequence[int]
) -> list[Fraction]:
    """Frequency of one symbol among the defined cells of x_t, per level."""
    code = spec.alphabet.index(symbol)
    out = []
    for t in t_list:
        spec.check_level(t)
        word = level_word(spec, t)
        defined = word.defined_count
        if defined == 0:
            raise AllBlank(f"x_{t} has no defined cells")
        out.append(Fraction(word.cells.count(code), defined))
    return out
