# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels. Same signatures and results as ``_fallback``."""
import numpy as np
cimport numpy as cnp
from libc.stdlib cimport malloc, free

ctypedef cnp.int64_t i64


def bracket_gather(const i64[:, ::1] table, i64 size, i64 n,
                   const i64[::1] starts, const i64[::1] pos):
    """Output index for every n-tuple; word k is right-bracketed over pos[starts[k]:starts[k+1]]."""
    cdef i64 total = 1
    cdef i64 j, t, k, r, acc, idx
    cdef i64 m = starts.shape[0] - 1
    for j in range(n):
        total *= size
    out = np.zeros(total, dtype=np.int64)
    cdef i64[::1] o = out
    if m == 0:
        return out
    cdef i64 *dig = <i64 *> malloc((n + 1) * sizeof(i64))
    for j in range(n + 1):
        dig[j] = 0
    try:
        for t in range(total):
            idx = 0
            for k in range(m):
                r = starts[k + 1] - 1
                acc = dig[pos[r]]
                r -= 1
                while r >= starts[k]:
                    acc = table[dig[pos[r]], acc]
                    r -= 1
                idx = idx * size + acc
            o[t] = idx
            j = n - 1
            while j >= 0:
                dig[j] += 1
                if dig[j] < size:
                    break
                dig[j] = 0
                j -= 1
    finally:
        free(dig)
    return out


def trunk_labelings(const i64[:, ::1] table, i64 size, i64 n_edges, const i64[:, ::1] squares):
    """All edge labelings (edge 0 most significant, lexicographic) satisfying every square."""
    cdef i64 total = 1
    cdef i64 j, s, t, a, b
    cdef i64 nsq = squares.shape[0]
    cdef bint ok
    for j in range(n_edges):
        total *= size
    found = []
    cdef i64 *lab = <i64 *> malloc((n_edges + 1) * sizeof(i64))
    for j in range(n_edges + 1):
        lab[j] = 0
    try:
        for t in range(total):
            ok = True
            for s in range(nsq):
                a = lab[squares[s, 0]]
                b = lab[squares[s, 1]]
                if lab[squares[s, 2]] != table[a, b] or lab[squares[s, 3]] != a:
                    ok = False
                    break
            if ok:
                found.append(t)
            j = n_edges - 1
            while j >= 0:
                lab[j] += 1
                if lab[j] < size:
                    break
                lab[j] = 0
                j -= 1
    finally:
        free(lab)
    codes = np.asarray(found, dtype=np.int64)
    return _decode(codes, size, n_edges)


def _decode(codes, size, n_edges):
    if n_edges == 0:
        return np.zeros((codes.shape[0], 0), dtype=np.int64)
    return np.stack(np.unravel_index(codes, (size,) * n_edges), axis=1).astype(np.int64)
