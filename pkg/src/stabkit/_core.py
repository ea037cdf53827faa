"""Select the compiled kernels when present, else the pure-Python ones.

Set ``STABKIT_PURE=1`` to force the fallback.
"""

import os

from . import _kernels_py

BACKEND = "python"
_compiled = None

if os.environ.get("STABKIT_PURE", "") not in ("1", "true", "yes"):
    try:
        from . import _kernels as _compiled  # type: ignore[no-redef]

        BACKEND = "cython"
    except ImportError:  # no compiler at install time
        _compiled = None

_INT64_SAFE = 1 << 62


def pick_candidates(a: int, b: int):
    if _compiled is not None and max(abs(a), abs(b)) < (1 << 30):
        return _compiled.pick_candidates(a, b)
    return _kernels_py.pick_candidates(a, b)


def scan_box(table, target, bound, lo, hi, mode, force_python=False):
    """Dispatch the box scan, falling back to Python ints near overflow."""
    peak = max(abs(v) for row in list(table) + [target] for v in row)
    worst = (4 * max(bound, abs(lo), abs(hi)) * peak + peak) ** 2 * 4
    if _compiled is None or force_python or worst >= _INT64_SAFE:
        return _kernels_py.scan_box(table, target, bound, lo, hi, mode)
    return _compiled.scan_box(table, target, bound, lo, hi, mode)
