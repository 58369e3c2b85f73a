"""Kernel dispatch: compiled extension when built, numpy fallback otherwise.

Set RACKDEND_PURE_PYTHON=1 to force the fallback.
"""
import os

import numpy as np

from rackdend import _fallback

BACKEND = "python"
_impl = _fallback
if os.environ.get("RACKDEND_PURE_PYTHON", "") not in ("1", "true", "yes"):
    try:
        from rackdend import _kernels as _impl  # noqa: F811
        BACKEND = "cython"
    except ImportError:
        _impl = _fallback


def backends():
    """Available implementations by name."""
    out = {"python": _fallback}
    try:
        from rackdend import _kernels
        out["cython"] = _kernels
    except ImportError:
        pass
    return out


def _flatten(words):
    starts = np.zeros(len(words) + 1, dtype=np.int64)
    pos = []
    for k, w in enumerate(words):
        if len(w) == 0:
            raise ValueError("empty word")
        pos.extend(w)
        starts[k + 1] = len(pos)
    return starts, np.asarray(pos, dtype=np.int64)


def bracket_gather(table, n, words, impl=None):
    """For each n-tuple index t, the index of the tuple (w_1(x), ..., w_m(x)).

    Each word is a list of 0-based positions (p_1, ..., p_r) and w(x) is the
    right-bracketed product x_{p_1} ▷ (x_{p_2} ▷ (... ▷ x_{p_r})).
    """
    table = np.ascontiguousarray(table, dtype=np.int64)
    if table.shape[0] ** len(words) >= 2**63:
        raise OverflowError(f"{len(words)} output coordinates overflow the int64 tuple index")
    starts, pos = _flatten(words)
    if len(pos) and (pos.min() < 0 or pos.max() >= n):
        raise ValueError("word position out of range")
    return (impl or _impl).bracket_gather(table, table.shape[0], n, starts, pos)


def trunk_labelings(table, n_edges, squares, impl=None):
    table = np.ascontiguousarray(table, dtype=np.int64)
    squares = np.ascontiguousarray(np.asarray(squares, dtype=np.int64).reshape(-1, 4))
    return (impl or _impl).trunk_labelings(table, table.shape[0], n_edges, squares)
