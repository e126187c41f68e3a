"""Shared fixtures: the worked-example specs and randomized schedule
generators used across suites."""

from __future__ import annotations

import random

import pytest

from oxtoby_lab import (
    Alphabet,
    FillStep,
    PeriodStructure,
    ToeplitzSpec,
    oxtoby_classic,
    relabel,
    shift_spec,
    validate_spec,
)

S0_DOC = {
    "alphabet": ["0", "1"],
    "periods": [1, 4, 8],
    "fills": [
        {"level": 1, "assign": {"1": "1"}},
        {"level": 2, "assign": {"2": "0", "3": "0"}},
    ],
}


@pytest.fixture
def s0():
    return validate_spec(S0_DOC)


@pytest.fixture
def sox():
    return oxtoby_classic(2, [4, 4], ["1", "0"])


@pytest.fixture
def sox3():
    return oxtoby_classic(3, [4, 4, 4], ["1", "0", "1"])


def random_go_spec(rng: random.Random, max_levels: int = 4, max_ratio: int = 4) -> ToeplitzSpec:
    """A random schedule that fills whole aligned intervals, hence satisfies
    the generalized Oxtoby condition by construction."""
    alphabet = Alphabet.of("0", "1")
    levels = rng.randint(2, max_levels)
    periods = [1]
    for _ in range(levels):
        periods.append(periods[-1] * rng.randint(2, max_ratio))
    fills = []
    word_blanks = {0}  # blank residues of the current level word
    prev_p = 1
    for t in range(1, levels + 1):
        q = periods[t]
        assign = {}
        if word_blanks:
            n_intervals = q // prev_p
            chosen = [k for k in range(n_intervals) if rng.random() < 0.5]
            if t == 1 and not chosen:
                chosen = [0]
            for k in chosen:
                for r in word_blanks:
                    assign[k * prev_p + r] = rng.randrange(2)
        fills.append(FillStep.from_mapping(t, q, assign))
        new_blanks = set()
        for base in range(0, q, prev_p):
            for r in word_blanks:
                pos = base + r
                if pos not in assign:
                    new_blanks.add(pos)
        word_blanks = new_blanks
        prev_p = q
    return ToeplitzSpec(alphabet, PeriodStructure(tuple(periods)), tuple(fills))


def random_relabel(rng: random.Random, spec: ToeplitzSpec, t: int):
    """Random residue-indexed binary swaps at level t.

    Swap bits are constant on classes mod p_1 so the relabeling never splits
    a coarse fill's residue class and is always representable.
    """
    p = spec.periods[t]
    p1 = spec.periods[1]
    bits = [rng.random() < 0.5 for _ in range(p1)]
    return {r: {"0": "1", "1": "0"} for r in range(p) if bits[r % p1]}


def random_conjugate_image(rng: random.Random, spec: ToeplitzSpec):
    """Image of spec under relabel at a random level composed with a random
    shift; returns (image, level, shift)."""
    t = rng.randint(1, spec.horizon)
    rho = random_relabel(rng, spec, t)
    a = rng.randrange(spec.periods[-1])
    return shift_spec(relabel(spec, t, rho), a), t, a
