"""Integer determinant kernels with a compiled fast path.

The compiled extension (`tamewall._ckernels`) is selected at import time
when present; set TAMEWALL_KERNEL=python to force the pure fallback.
Both paths are exact and produce identical results; only speed differs.
The compiled path is used only when an exact Hadamard-style bound proves
that every Bareiss intermediate fits in 64 bits.
"""

import os

from . import _pykernels

try:
    from . import _ckernels
except ImportError:  # extension not built
    _ckernels = None

if os.environ.get("TAMEWALL_KERNEL", "").lower() in {"python", "pure"}:
    _ckernels = None

IMPLEMENTATION = "c" if _ckernels is not None else "python"

# Any Bareiss intermediate is a minor of the input; |minor|^2 is bounded by
# the product of the row norms squared, so products stay below 2^63 whenever
# that bound is below 2^62.
_INT64_SAFE = 1 << 62


def hadamard_bound_sq(rows):
    """Product over rows of the squared row norm (0 for a zero row)."""
    h = 1
    for row in rows:
        s = 0
        for x in row:
            s += x * x
        if s == 0:
            return 0
        h *= s
    return h


def fits_int64(n, max_abs):
    """Conservative per-instance check that the compiled kernel is safe."""
    return 0 < n <= 16 and (n * max_abs * max_abs) ** n < _INT64_SAFE


def det_int(rows):
    """Exact determinant of a square integer matrix (list of int rows)."""
    n = len(rows)
    if n == 0:
        return 1
    if _ckernels is not None and n <= 16:
        if hadamard_bound_sq(rows) < _INT64_SAFE:
            flat = [x for row in rows for x in row]
            return _ckernels.det_i64(flat, n)
    return _pykernels.det_int(rows)


def det_int_flat(flat, n, assume_safe=False):
    """Determinant of a row-major flattened matrix.

    With assume_safe=True the caller has already established (for example
    via fits_int64 on a shared entry bound) that int64 arithmetic cannot
    overflow, so the per-call bound check is skipped.
    """
    if _ckernels is not None and n <= 16:
        if assume_safe:
            return _ckernels.det_i64(flat, n)
        rows = [flat[i * n:(i + 1) * n] for i in range(n)]
        if hadamard_bound_sq(rows) < _INT64_SAFE:
            return _ckernels.det_i64(flat, n)
        return _pykernels.det_int(rows)
    return _pykernels.det_int_flat(flat, n)
