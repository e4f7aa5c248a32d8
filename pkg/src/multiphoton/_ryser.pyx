# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gray-code Ryser permanent kernel.

Same semantics as ``multiphoton._ryser_py``; selected at import when the
extension built successfully.
"""

from libc.stdlib cimport free, malloc


def ryser_permanent(const double complex[:, ::1] a):
    """Permanent of a square complex matrix by Ryser's inclusion-exclusion
    sum, walking column subsets in Gray-code order (O(2^n * n))."""
    cdef Py_ssize_t n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("ryser_permanent requires a square matrix")
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(a[0, 0])
    if n > 62:
        raise ValueError("subset index would overflow")

    cdef double complex *w = <double complex *> malloc(n * sizeof(double complex))
    if w is NULL:
        raise MemoryError()

    cdef double complex total = 0
    cdef double complex prod
    cdef double sign = 1.0          # (-1)^|S|, toggles on every Gray step
    cdef unsigned long long k, gray = 0, new_gray, bit
    cdef unsigned long long limit = (<unsigned long long> 1) << n
    cdef Py_ssize_t i, j

    for i in range(n):
        w[i] = 0

    try:
        for k in range(1, limit):
            new_gray = k ^ (k >> 1)
            bit = new_gray ^ gray
            j = 0
            while not (bit & 1):
                bit >>= 1
                j += 1
            if new_gray & ((<unsigned long long> 1) << j):
                for i in range(n):
                    w[i] = w[i] + a[i, j]
            else:
                for i in range(n):
                    w[i] = w[i] - a[i, j]
            gray = new_gray
            sign = -sign
            prod = w[0]
            for i in range(1, n):
                prod = prod * w[i]
            total = total + sign * prod
    finally:
        free(w)

    if n % 2:
        total = -total
    return complex(total)
