# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled kernels for the hot cell-level loops.

Contracts match `_pure`; the wins come from avoiding per-call rotation and
mask allocations and from tight typed loops over the raw byte buffers.
"""

from libc.string cimport memcmp

DEF BLANK_C = 0xFF

BLANK = 0xFF

UNIFY_OK = 0
UNIFY_BLANK_MISALIGN = 1
UNIFY_TARGET_CONFLICT = 2
UNIFY_NOT_INJECTIVE = 3
UNIFY_AMBIGUOUS = 4


def blank_mask(bytes cells):
    cdef const unsigned char[::1] src = cells
    cdef Py_ssize_t n = src.shape[0]
    cdef bytearray out = bytearray(n)
    cdef unsigned char[::1] dst = out
    cdef Py_ssize_t i
    for i in range(n):
        dst[i] = 1 if src[i] == BLANK_C else 0
    return bytes(out)


def smallest_period(bytes cells):
    cdef const unsigned char[::1] c = cells
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t d, i, j
    cdef bint ok
    for d in range(1, n // 2 + 1):
        if n % d != 0:
            continue
        ok = True
        j = d
        for i in range(n):
            if c[i] != c[j]:
                ok = False
                break
            j += 1
            if j == n:
                j = 0
        if ok:
            return d
    return n


def blank_misalign(bytes x, bytes y):
    cdef const unsigned char[::1] a = x
    cdef const unsigned char[::1] b = y
    cdef Py_ssize_t n = a.shape[0]
    cdef Py_ssize_t i
    for i in range(n):
        if (a[i] == BLANK_C) != (b[i] == BLANK_C):
            return i
    return -1


def cyclic_match_offsets(bytes x, bytes y):
    # same doubled-word search as the fallback; bytes.find is already C
    cdef Py_ssize_t n = len(x)
    if n != len(y):
        return []
    if x == y:
        return list(range(0, n, smallest_period(x)))
    doubled = x + x
    out = []
    cdef Py_ssize_t pos = doubled.find(y)
    while 0 <= pos < n:
        out.append(pos)
        pos = doubled.find(y, pos + 1)
    return out


def first_blank_from(bytes cells, Py_ssize_t start):
    cdef const unsigned char[::1] c = cells
    cdef Py_ssize_t n = c.shape[0]
    cdef Py_ssize_t i, j
    start %= n
    j = start
    for i in range(n):
        if c[j] == BLANK_C:
            return i
        j += 1
        if j == n:
            j = 0
    return -1


def unify_blocks(bytes x, bytes y, Py_ssize_t p):
    cdef const unsigned char* a = x
    cdef const unsigned char* b = y
    cdef Py_ssize_t n = len(x)
    cdef Py_ssize_t nblocks = n // p
    cdef Py_ssize_t k, base
    cdef dict table = {}
    cdef dict first_at = {}
    cdef dict seen = {}
    cdef Py_ssize_t soft_at = -1
    cdef const unsigned char* pv
    for k in range(nblocks):
        base = k * p
        s = x[base : base + p]
        prev = table.get(s)
        if prev is None:
            table[s] = y[base : base + p]
            first_at[s] = k
        else:
            pv = prev
            if memcmp(pv, b + base, p) != 0:
                return UNIFY_TARGET_CONFLICT, k, {}
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
