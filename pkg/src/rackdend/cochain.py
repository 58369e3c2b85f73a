"""Cochain complexes: rack, pointed rack, group (bar) and cubical group.

A degree-n cochain is a dense table over n-tuples. Tuple (x_1, ..., x_n)
sits at the mixed-radix index with x_1 most significant, which is numpy's
C-order ravel of an (s, ..., s) array. Degree 0 has exactly one entry.
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np
import scipy.sparse as sp

from rackdend import kernels
from rackdend.cubical import (extend_group_potentials, face_vertex, nerve_face_words,
                              prefix)
from rackdend.linalg import AbelianInvariants, cohomology_invariants
from rackdend.rings import CoefficientRing, Integers, parse_ring
from rackdend.structures import FiniteGroup, FiniteShelf

TAGS = ("rack", "group", "cubical-group")


class DegreeError(ValueError):
    pass


def tuple_index(xs, size):
    idx = 0
    for x in xs:
        idx = idx * size + int(x)
    return idx


def index_tuple(idx, size, n):
    out = []
    for _ in range(n):
        idx, r = divmod(idx, size)
        out.append(r)
    return tuple(reversed(out))


def all_tuples(size, n):
    """(size^n, n) array of all tuples in index order."""
    if n == 0:
        return np.zeros((1, 0), dtype=np.int64)
    return np.indices((size,) * n, dtype=np.int64).reshape(n, -1).T


def _check_tag(tag, structure):
    if tag not in TAGS:
        raise ValueError(f"unknown complex {tag!r}; use one of {TAGS}")
    if tag == "rack" and not isinstance(structure, FiniteShelf):
        raise TypeError("rack complex needs a shelf or rack")
    if tag != "rack" and not isinstance(structure, FiniteGroup):
        raise TypeError(f"{tag} complex needs a group")


@dataclass(eq=False)
class Cochain:
    tag: str
    structure: object
    degree: int
    values: np.ndarray
    ring: object = field(default_factory=Integers)

    def __post_init__(self):
        _check_tag(self.tag, self.structure)
        if self.degree < 0:
            raise DegreeError("negative degree")
        v = np.asarray(self.values)
        if v.ndim == 0 or v.shape[0] != self.size ** self.degree:
            raise ValueError(f"table has {v.shape[:1]} rows, expected {self.size ** self.degree}")
        self.values = v

    @property
    def size(self):
        return self.structure.size

    def __call__(self, *xs):
        if len(xs) != self.degree:
            raise DegreeError(f"cochain of degree {self.degree} given {len(xs)} arguments")
        return self.values[tuple_index(xs, self.size)]

    def _like(self, values, degree=None):
        return Cochain(self.tag, self.structure, self.degree if degree is None else degree,
                       values, self.ring)

    def _same(self, other):
        if other.structure is not self.structure or other.tag != self.tag:
            raise ValueError("cochains live on different complexes")
        if other.degree != self.degree:
            raise DegreeError(f"degrees {self.degree} and {other.degree} differ")

    def __add__(self, other):
        self._same(other)
        return self._like(self.ring.add(self.values, other.values))

    def __sub__(self, other):
        self._same(other)
        return self._like(self.ring.sub(self.values, other.values))

    def __neg__(self):
        return self._like(self.ring.neg(self.values))

    def scaled(self, c):
        return self._like(self.ring.scale(c, self.values))

    def equals(self, other):
        return (other.degree == self.degree and other.structure is self.structure
                and self.values.shape == other.values.shape
                and self.ring.equal(self.values, other.values))

    def is_zero(self):
        return not np.any(self.ring.reduce(self.values))

    @classmethod
    def zero(cls, tag, structure, degree, ring=None):
        ring = ring or Integers()
        return cls(tag, structure, degree, ring.zeros(structure.size ** degree), ring)

    @classmethod
    def basis(cls, tag, structure, degree, index, ring=None):
        ring = ring or Integers()
        v = ring.zeros(structure.size ** degree)
        v[index] = ring.one()
        return cls(tag, structure, degree, v, ring)

    @classmethod
    def random(cls, tag, structure, degree, ring, rng):
        return cls(tag, structure, degree, ring.random(rng, structure.size ** degree), ring)

    @classmethod
    def from_function(cls, tag, structure, degree, fn, ring=None):
        ring = ring or Integers()
        vals = [fn(*t) for t in all_tuples(structure.size, degree).tolist()] if degree else [fn()]
        return cls(tag, structure, degree, ring.reduce(np.array(vals, dtype=object)), ring)

    def as_dict(self):
        return {"complex": self.tag, "degree": self.degree, "ring": self.ring.descriptor(),
                "values": np.vectorize(int, otypes=[object])(self.values).tolist()}


# face gathers: for each (n+1)-tuple, the index of the face n-tuple

@lru_cache(maxsize=512)
def rack_face(X, m, i, eps):
    """Indices of N(X)(∂_{i,ε}) over all m-tuples."""
    return kernels.bracket_gather(X.table, m, nerve_face_words(m, i, eps))


@lru_cache(maxsize=512)
def rack_prefix(X, m, i):
    """x_1 ▷ (x_2 ▷ (... ▷ x_i)) over all m-tuples."""
    return kernels.bracket_gather(X.table, m, [list(range(i))])


@lru_cache(maxsize=512)
def group_face(G, m, i):
    """Indices of the bar face d_i (0 ≤ i ≤ m) over all m-tuples."""
    if i == 0:
        words = [[k] for k in range(1, m)]
    elif i == m:
        words = [[k] for k in range(m - 1)]
    else:
        words = [[k] for k in range(i - 1)] + [[i - 1, i]] + [[k] for k in range(i + 1, m)]
    if not words:
        return np.zeros(G.size ** m, dtype=np.int64)
    return kernels.bracket_gather(G.mul, m, words)


@lru_cache(maxsize=64)
def cubical_group_faces(G, m):
    """For every m-tuple and every (i, ε): λ(F∘∂_{i,ε}) with F = extend_group_functor(tuple).

    Returned as an int64 array of shape (m, 2, |G|^m). Works on the vertex
    potentials of all functors at once (see extend_group_potentials), so the
    faces come from functor precomposition, not from rack formulas.
    """
    pot = extend_group_potentials(G, m)
    out = np.zeros((m, 2, G.size ** m), dtype=np.int64)
    for i in range(1, m + 1):
        for e in (0, 1):
            idx = np.zeros(G.size ** m, dtype=np.int64)
            for k in range(1, m):
                a = face_vertex(m, i, e, prefix(k - 1))
                b = face_vertex(m, i, e, prefix(k))
                idx = idx * G.size + G.mul[G.inv[pot[:, a]], pot[:, b]]
            out[i - 1, e] = idx
    return out


def _acting(action, prefix_idx, vals):
    """x·a for x = prefix element, a a row of vals (shape (N, k))."""
    A = action.matrices[prefix_idx].astype(object if not action.modulus else np.int64)
    out = np.matmul(A, vals[..., None])[..., 0]
    return out % action.modulus if action.modulus else out


def rack_diff(f, action=None):
    """d_R f = Σ_{i=1}^{n+1} (-1)^i (d_{i,0} f - d_{i,1} f)."""
    if f.tag != "rack":
        raise ValueError("rack_diff needs a rack cochain")
    X, n, ring = f.structure, f.degree, f.ring
    if action is not None:
        if action.rack is not X:
            raise ValueError("action is over a different rack")
        if f.values.shape[1:] != (action.rank,):
            raise ValueError(f"module cochains need values of shape (N, {action.rank})")
    m = n + 1
    out = None
    for i in range(1, m + 1):
        v0 = f.values[rack_face(X, m, i, 0)]
        v1 = f.values[rack_face(X, m, i, 1)]
        if action is not None:
            v1 = _acting(action, rack_prefix(X, m, i), v1)
        term = v0 - v1 if i % 2 == 0 else v1 - v0
        out = term if out is None else out + term
    return f._like(ring.reduce(out), m)


def group_diff(f):
    """Bar differential with trivial coefficients."""
    if f.tag != "group":
        raise ValueError("group_diff needs a group cochain")
    G, n = f.structure, f.degree
    m = n + 1
    out = None
    for i in range(0, m + 1):
        term = f.values[group_face(G, m, i)]
        if i % 2:
            term = -term
        out = term if out is None else out + term
    return f._like(f.ring.reduce(out), m)


def cubical_group_diff(f):
    """d = Σ (-1)^i ((∂_{i,0})* - (∂_{i,1})*) on tuple-indexed cubical group cochains."""
    if f.tag != "cubical-group":
        raise ValueError("cubical_group_diff needs a cubical-group cochain")
    G, n = f.structure, f.degree
    m = n + 1
    faces = cubical_group_faces(G, m)
    out = None
    for i in range(1, m + 1):
        v0, v1 = f.values[faces[i - 1, 0]], f.values[faces[i - 1, 1]]
        term = v0 - v1 if i % 2 == 0 else v1 - v0
        out = term if out is None else out + term
    return f._like(f.ring.reduce(out), m)


def differential(f, action=None):
    if f.tag == "rack":
        return rack_diff(f, action)
    if action is not None:
        raise ValueError("module actions are only supported on rack complexes")
    return group_diff(f) if f.tag == "group" else cubical_group_diff(f)


# matrices

def _face_terms(tag, structure, n):
    """(sign, gather index array) pairs with d^{n+1} f = Σ sign · f[gather]."""
    m = n + 1
    terms = []
    if tag == "rack":
        for i in range(1, m + 1):
            s = (-1) ** i
            terms += [(s, rack_face(structure, m, i, 0)), (-s, rack_face(structure, m, i, 1))]
    elif tag == "group":
        terms = [((-1) ** i, group_face(structure, m, i)) for i in range(m + 1)]
    else:
        faces = cubical_group_faces(structure, m)
        for i in range(1, m + 1):
            s = (-1) ** i
            terms += [(s, faces[i - 1, 0]), (-s, faces[i - 1, 1])]
    return terms


def diff_sparse(tag, structure, n, action=None):
    """d^{n+1}: C^n → C^{n+1} as a CSR int64 matrix in the tuple basis.

    With a module action the basis is tuple-major, module-coordinate minor.
    """
    _check_tag(tag, structure)
    s = structure.size
    rows_n, cols_n = s ** (n + 1), s ** n
    if action is None:
        r, c, v = [], [], []
        for sign, g in _face_terms(tag, structure, n):
            r.append(np.arange(rows_n))
            c.append(g)
            v.append(np.full(rows_n, sign))
        if not r:
            return sp.csr_matrix((rows_n, cols_n), dtype=np.int64)
        M = sp.coo_matrix((np.concatenate(v), (np.concatenate(r), np.concatenate(c))),
                          shape=(rows_n, cols_n), dtype=np.int64).tocsr()
        M.sum_duplicates()
        M.eliminate_zeros()
        return M
    if tag != "rack":
        raise ValueError("module actions are only supported on rack complexes")
    k = action.rank
    m = n + 1
    blocks_r, blocks_c, blocks_v = [], [], []
    eye = np.eye(k, dtype=np.int64)
    for i in range(1, m + 1):
        sgn = (-1) ** i
        for eps in (0, 1):
            g = rack_face(structure, m, i, eps)
            mats = np.broadcast_to(eye, (rows_n, k, k)) if eps == 0 else action.matrices[rack_prefix(structure, m, i)]
            val = (sgn if eps == 0 else -sgn) * mats
            rr = (np.arange(rows_n)[:, None, None] * k + np.arange(k)[None, :, None])
            cc = (g[:, None, None] * k + np.arange(k)[None, None, :])
            rr, cc = np.broadcast_arrays(rr, cc)
            blocks_r.append(rr.ravel())
            blocks_c.append(cc.ravel())
            blocks_v.append(np.asarray(val).ravel())
    M = sp.coo_matrix((np.concatenate(blocks_v), (np.concatenate(blocks_r), np.concatenate(blocks_c))),
                      shape=(rows_n * k, cols_n * k), dtype=np.int64).tocsr()
    M.sum_duplicates()
    if action.modulus:
        M.data %= action.modulus
    M.eliminate_zeros()
    return M


def _modulus(coeff):
    if coeff is None:
        return 0
    ring = parse_ring(coeff) if not isinstance(coeff, CoefficientRing) else coeff
    if not ring.snf_amenable:
        raise ValueError(f"coefficients {ring} are not Z or Z/m")
    return ring.modulus


def diff_matrix(tag, structure, n, coeff="Z", action=None):
    """Dense int64 matrix of d^{n+1}; column j is d of the j-th basis cochain."""
    m = _modulus(coeff)
    M = diff_sparse(tag, structure, n, action).toarray()
    return M % m if m else M


def pointed_indices(X, n):
    """Indices of n-tuples with no entry equal to the unit."""
    if X.unit is None:
        raise ValueError("rack is not pointed")
    if n == 0:
        return np.zeros(0, dtype=np.int64)
    T = all_tuples(X.size, n)
    return np.nonzero((T != X.unit).all(axis=1))[0]


def pointed_diff_matrix(X, n, coeff="Z", check=True):
    """d^{n+1} restricted to cochains vanishing on tuples containing the unit.

    The basis of the pointed subcomplex in degree n is the indicator cochains
    of unit-free tuples (a basis of the subspace of cochains supported on
    them); the subcomplex condition is that d keeps support unit-free.
    """
    m = _modulus(coeff)
    M = diff_sparse("rack", X, n)
    cols = pointed_indices(X, n)
    rows = pointed_indices(X, n + 1)
    sub = M[:, cols]
    if check:
        mask = np.ones(M.shape[0], dtype=bool)
        mask[rows] = False
        leak = sub[mask]
        if m:
            leak = leak.toarray() % m
        if np.any(leak.toarray() if sp.issparse(leak) else leak):
            raise ArithmeticError(f"pointed subcomplex not closed in degree {n}")
    D = sub[rows].toarray()
    return D % m if m else D


def pointed_closure_holds(X, n):
    try:
        pointed_diff_matrix(X, n)
    except ArithmeticError:
        return False
    return True


def dd_is_zero(tag, structure, n, action=None):
    """d^{n+2} ∘ d^{n+1} = 0 on C^n as an exact sparse product."""
    A = diff_sparse(tag, structure, n + 1, action)
    B = diff_sparse(tag, structure, n, action)
    P = (A @ B).tocsr()
    if action is not None and action.modulus:
        P.data %= action.modulus
    P.eliminate_zeros()
    return P.nnz == 0


def pointed_dd_is_zero(X, n):
    A = sp.csr_matrix(pointed_diff_matrix(X, n + 1))
    B = sp.csr_matrix(pointed_diff_matrix(X, n))
    P = (A @ B).tocsr()
    P.eliminate_zeros()
    return P.nnz == 0


def cohomology(tag, structure, n, coeff="Z", action=None):
    """Invariants of ker d^{n+1} / im d^n (degree 0: ker d^1)."""
    if n < 0:
        raise DegreeError("negative degree")
    m = _modulus(coeff)
    if action is not None and action.modulus and m and action.modulus != m:
        raise ValueError("action modulus differs from coefficient modulus")
    if action is not None and action.modulus:
        m = action.modulus
    d_out = diff_matrix(tag, structure, n, m and f"Z/{m}" or "Z", action)
    if n == 0:
        d_in = np.zeros((d_out.shape[1], 0), dtype=np.int64)
    else:
        d_in = diff_matrix(tag, structure, n - 1, m and f"Z/{m}" or "Z", action)
    return cohomology_invariants(d_out, d_in, modulus=m)


def pointed_cohomology(X, n, coeff="Z"):
    """Cohomology of the pointed subcomplex (degree ≥ 1)."""
    if X.unit is None:
        raise ValueError("rack is not pointed")
    if n < 1:
        raise DegreeError("pointed cohomology starts in degree 1")
    m = _modulus(coeff)
    d_out = pointed_diff_matrix(X, n, coeff)
    if n == 1:
        d_in = np.zeros((d_out.shape[1], 0), dtype=np.int64)
    else:
        d_in = pointed_diff_matrix(X, n - 1, coeff)
    return cohomology_invariants(d_out, d_in, modulus=m)

