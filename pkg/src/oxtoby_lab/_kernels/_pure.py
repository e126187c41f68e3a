"""Pure-Python kernel fallback.

Same contracts as the compiled module. Implementations lean on bytes
primitives (slice compare, ``find``) so the fallback stays usable on large
words even without the extension.
"""

from __future__ import annotations

BLANK = 0xFF

# unification outcomes
UNIFY_OK = 0
UNIFY_BLANK_MISALIGN = 1
UNIFY_TARGET_CONFLICT = 2
UNIFY_NOT_INJECTIVE = 3
UNIFY_AMBIGUOUS = 4

_BLANK_MASK_TABLE = bytes(1 if b == BLANK else 0 for b in range(256))


def blank_mask(cells: bytes) -> bytes:
    """0/1 mask marking blank cells."""
    return cells.translate(_BLANK_MASK_TABLE)


def smallest_period(cells: bytes) -> int:
    """Least divisor d of len(cells) such that the cyclic word is d-periodic.

    Blank is compared like any other symbol.
    """
    n = len(cells)
    for d in range(1, n // 2 + 1):
        if n % d == 0 and cells[d:] + cells[:d] == cells:
            return d
    return n


def blank_misalign(x: bytes, y: bytes) -> int:
    """First index where exactly one of x, y is blank; -1 if none."""
    mx = blank_mask(x)
    my = blank_mask(y)
    if mx == my:
        return -1
    for i, (a, b) in enumerate(zip(mx, my)):
        if a != b:
            return i
    return -1


def cyclic_match_offsets(x: bytes, y: bytes) -> list:
    """All s in [0, n) with x[(i+s) mod n] == y[i] for every i."""
    n = len(x)
    if n != len(y):
        return []
    if x == y:
        # matching offsets form the stabilizer subgroup of the rotation
        return list(range(0, n, smallest_period(x)))
    doubled = x + x
    out = []
    pos = doubled.find(y)
    while 0 <= pos < n:
        out.append(pos)
        pos = doubled.find(y, pos + 1)
    return out


def first_blank_from(cells: bytes, start: int) -> int:
    """Distance from `start` to the nearest blank scanning forward cyclically.

    Returns -1 when the word has no blank at all.
    """
    n = len(cells)
    start %= n
    pos = cells.find(BLANK, start)
    if pos >= 0:
        return pos - start
    pos = cells.find(BLANK)
    if pos < 0:
        return -1
    return pos + n - start


def unify_blocks(x: bytes, y: bytes, p: int):
    """Unify the blockwise pairing {x-block(k) -> y-block(k)}.

    Assumes len(x) == len(y), p divides the length, and blank patterns are
    already aligned (check `blank_misalign` first). Returns
    (code, block_index, mapping): code UNIFY_OK with the source->target
    table, UNIFY_TARGET_CONFLICT when equal sources force different targets,
    UNIFY_NOT_INJECTIVE when two distinct sources share a fully defined
    target, UNIFY_AMBIGUOUS when they share a target with blanks (the true
    targets may still differ beyond the horizon).
    """
    n = len(x)
    table = {}
    first_at = {}
    for k in range(n // p):
        s = x[k * p : (k + 1) * p]
        u = y[k * p : (k + 1) * p]
        prev = table.get(s)
        if prev is None:
            table[s] = u
            first_at[s] = k
        elif prev != u:
            return UNIFY_TARGET_CONFLICT, k, {}
    seen = {}
    soft_at = -1
    for s, u in table.items():
        other = seen.get(u)
        if other is None:
            seen[u] = s
        else:
            if BLANK not in u:
                return UNIFY_NOT_INJECTIVE, first_at[s], {}
            soft_at = first_at[s]
    if soft_at >= 0:
        return UNIFY_AMBIGUOUS, soft_at, table
    return UNIFY_OK, -1, table
