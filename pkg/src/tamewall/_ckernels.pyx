# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled integer-matrix kernels: int64 Bareiss determinant.

The caller must guarantee that every intermediate value fits in 64 bits;
`tamewall.kernels` checks an exact Hadamard-style bound before dispatching
here.  Divisions in the Bareiss recurrence are exact, so C truncation is
safe.
"""

DEF MAXN = 16


def det_i64(list flat, Py_ssize_t n):
    """Determinant of a row-major flattened n*n integer matrix."""
    cdef long long m[MAXN * MAXN]
    cdef Py_ssize_t i, j, k
    cdef long long pivot, prev, mik, tmp
    cdef int sign = 1

    if n <= 0:
        return 1
    if n > MAXN:
        raise ValueError("dimension too large for the compiled kernel")
    for i in range(n * n):
        m[i] = flat[i]

    prev = 1
    for k in range(n - 1):
        if m[k * n + k] == 0:
            for i in range(k + 1, n):
                if m[i * n + k] != 0:
                    for j in range(n):
                        tmp = m[k * n + j]
                        m[k * n + j] = m[i * n + j]
                        m[i * n + j] = tmp
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k * n + k]
        for i in range(k + 1, n):
            mik = m[i * n + k]
            for j in range(k + 1, n):
                m[i * n + j] = (m[i * n + j] * pivot - mik * m[k * n + j]) // prev
            m[i * n + k] = 0
        prev = pivot
    return sign * m[(n - 1) * n + (n - 1)]
