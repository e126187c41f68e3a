#!/usr/bin/env python3
"""Compare the compiled kernels against the pure-Python fallback.

Runs the hot cell-level loops on synthetic schedule-like words and prints a
table of timings plus speedups. Sizes mimic deep words of the builders
(classic ratios and the doubling staircase).

Usage: python benchmarks/bench_kernels.py [--size N] [--repeat K]
"""

from __future__ import annotations

import argparse
import random
import time

from oxtoby_lab._kernels import _pure

try:
    from oxtoby_lab._kernels import _speedups
except ImportError:
    _speedups = None

BLANK = _pure.BLANK


def synthetic_word(n: int, hole_fraction: float, seed: int) -> bytes:
    """Blocky word with periodic holes, like a mid-construction skeleton."""
    rng = random.Random(seed)
    cells = bytearray()
    while len(cells) < n:
        run = rng.randint(2, 9)
        sym = rng.randrange(2)
        cells.extend([sym] * run)
        if rng.random() < hole_fraction * 3:
            cells.extend([BLANK] * rng.randint(1, 3))
    return bytes(cells[:n])


def time_call(fn, *args, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=1 << 18)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    n = args.size
    word = synthetic_word(n, 0.08, 1)
    other = synthetic_word(n, 0.08, 1)  # same seed: aligned blanks
    # make the word exactly 4-per-256 periodic in places to exercise divisors
    periodic = (word[:256] * (n // 256 + 1))[:n]
    block = 64

    cases = [
        ("smallest_period (aperiodic)", "smallest_period", (word,)),
        ("smallest_period (256-periodic)", "smallest_period", (periodic,)),
        ("blank_misalign", "blank_misalign", (word, other)),
        ("blank_mask", "blank_mask", (word,)),
        ("first_blank_from", "first_blank_from", (word, n // 2)),
        ("cyclic_match_offsets", "cyclic_match_offsets", (periodic, periodic)),
        (f"unify_blocks (p={block})", "unify_blocks", (word, other, block)),
    ]

    backends = [("pure", _pure)]
    if _speedups is not None:
        backends.append(("compiled", _speedups))
    else:
        print("note: compiled backend unavailable, timing pure only")

    print(f"word length {n}, best of {args.repeat}\n")
    header = f"{'kernel':34}" + "".join(f"{name:>12}" for name, _m in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label, fn_name, call_args in cases:
        times = [time_call(getattr(mod, fn_name), *call_args, repeat=args.repeat) for _n, mod in backends]
        row = f"{label:34}" + "".join(f"{t * 1e3:>10.2f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
