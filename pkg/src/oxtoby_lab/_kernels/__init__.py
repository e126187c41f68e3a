"""Kernel backend selection.

The hot cell-level loops (period detection, blank alignment, block
unification, rotation matching) live in a compiled extension when available;
otherwise the pure-Python fallback takes over. Set OXTOBY_LAB_FORCE_PURE=1
to skip the extension (used by the parity tests and the benchmark).
"""

from __future__ import annotations

import os

from . import _pure

if os.environ.get("OXTOBY_LAB_FORCE_PURE"):
    _impl = _pure
else:
    try:
        from . import _speedups as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pure

BACKEND = "compiled" if _impl is not _pure else "pure"

BLANK = _pure.BLANK
UNIFY_OK = _pure.UNIFY_OK
UNIFY_BLANK_MISALIGN = _pure.UNIFY_BLANK_MISALIGN
UNIFY_TARGET_CONFLICT = _pure.UNIFY_TARGET_CONFLICT
UNIFY_NOT_INJECTIVE = _pure.UNIFY_NOT_INJECTIVE
UNIFY_AMBIGUOUS = _pure.UNIFY_AMBIGUOUS

blank_mask = _impl.blank_mask
smallest_period = _impl.smallest_period
blank_misalign = _impl.blank_misalign
cyclic_match_offsets = _impl.cyclic_match_offsets
first_blank_from = _impl.first_blank_from
unify_blocks = _impl.unify_blocks
