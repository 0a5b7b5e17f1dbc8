"""Pure-Python enumeration kernels (fallback for ``_ckernels``).

All tables hold doubled spin values, so every quantity is an integer.
"""

import numpy as np


def digit_table(p, M):
    """``(M, p**M)`` table; row ``i`` is the doubled digit of weight ``p**i``."""
    n = p**M
    rows = [[0] * n for _ in range(M)]
    shift = p - 1
    for j in range(n):
        q = j
        for i in range(M):
            q, d = divmod(q, p)
            rows[i][j] = 2 * d - shift
    return np.array(rows, dtype=np.int64).reshape(M, n)


def cyclic_chain_sums(t):
    """Per column: sum of products of cyclically adjacent rows, and row sum."""
    t = np.ascontiguousarray(t, dtype=np.int64)
    M, n = t.shape
    rows = t.tolist()
    bond = [0] * n
    field = [0] * n
    for j in range(n):
        b = f = 0
        for m in range(M):
            v = rows[m][j]
            b += v * rows[(m + 1) % M][j]
            f += v
        bond[j] = b
        field[j] = f
    return np.array(bond, dtype=np.int64), np.array(field, dtype=np.int64)


def compose_doubled(t, p):
    """Per column: ``sum_i p**i * t[i]``."""
    t = np.ascontiguousarray(t, dtype=np.int64)
    M, n = t.shape
    rows = t.tolist()
    out = [0] * n
    for j in range(n):
        acc, w = 0, 1
        for i in range(M):
            acc += w * rows[i][j]
            w *= p
        out[j] = acc
    return np.array(out, dtype=np.int64)
