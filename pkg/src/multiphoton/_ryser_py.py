"""Pure-Python Gray-code Ryser permanent kernel.

Fallback for :mod:`multiphoton._ryser` when the compiled extension is not
available.  Identical algorithm: Ryser's inclusion-exclusion sum over
column subsets, with the running column sums updated by one Gray-code bit
flip per subset, O(2^n * n).
"""

from math import prod


def ryser_permanent(a) -> complex:
    n = a.shape[0]
    if a.shape[1] != n:
        raise ValueError("ryser_permanent requires a square matrix")
    if n == 0:
        return 1.0 + 0j
    if n == 1:
        return complex(a[0, 0])

    cols = [[complex(a[i, j]) for i in range(n)] for j in range(n)]
    w = [0j] * n
    total = 0j
    sign = 1.0  # (-1)^|S|, toggles on every Gray step
    gray = 0
    for k in range(1, 1 << n):
        new_gray = k ^ (k >> 1)
        bit = new_gray ^ gray
        j = bit.bit_length() - 1
        col = cols[j]
        if new_gray & bit:
            for i in range(n):
                w[i] += col[i]
        else:
            for i in range(n):
                w[i] -= col[i]
        gray = new_gray
        sign = -sign
        total += sign * prod(w)

    return -total if n % 2 else total
