"""Pure numpy versions of the compiled kernels."""
import numpy as np

_CHUNK = 1 << 18


def bracket_gather(table, size, n, starts, pos):
    """Output index for every n-tuple; word k is right-bracketed over pos[starts[k]:starts[k+1]]."""
    table = np.asarray(table, dtype=np.int64)
    total = size**n
    m = len(starts) - 1
    out = np.zeros(total, dtype=np.int64)
    if m == 0 or total == 0:
        return out
    digits = np.indices((size,) * n, dtype=np.int64).reshape(n, -1)
    for k in range(m):
        word = pos[starts[k]:starts[k + 1]]
        acc = digits[word[-1]]
        for p in word[-2::-1]:
            acc = table[digits[p], acc]
        out = out * size + acc
    return out


def trunk_labelings(table, size, n_edges, squares):
    """All edge labelings (edge 0 most significant, lexicographic) satisfying every square."""
    table = np.asarray(table, dtype=np.int64)
    squares = np.asarray(squares, dtype=np.int64).reshape(-1, 4)
    if n_edges == 0:
        return np.zeros((1, 0), dtype=np.int64)
    total = size**n_edges
    shape = (size,) * n_edges
    kept = []
    for lo in range(0, total, _CHUNK):
        codes = np.arange(lo, min(total, lo + _CHUNK), dtype=np.int64)
        lab = np.stack(np.unravel_index(codes, shape), axis=1)
        ok = np.ones(len(codes), dtype=bool)
        for a, b, c, d in squares:
            ok &= lab[:, c] == table[lab[:, a], lab[:, b]]
            ok &= lab[:, d] == lab[:, a]
        kept.append(lab[ok])
    return np.concatenate(kept).astype(np.int64)
