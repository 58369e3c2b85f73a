"""Exact integer and prime-field linear algebra.

Matrices are numpy arrays. Integer work happens on object arrays so entries
are arbitrary-precision Python ints; row and column operations are vectorised
over whole rows, which keeps the Python-level loop count at O(rank).
"""
from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class SnfResult:
    U: np.ndarray
    D: np.ndarray
    V: np.ndarray

    @property
    def diagonal(self):
        k = min(self.D.shape)
        return [int(self.D[i, i]) for i in range(k)]


@dataclass(frozen=True)
class AbelianInvariants:
    betti: int
    torsion: tuple = ()

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        if any(x <= 1 for x in t):
            raise ValueError("torsion entries must exceed 1")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError("torsion must be a divisibility chain")
        object.__setattr__(self, "torsion", t)

    def as_dict(self):
        return {"betti": self.betti, "torsion": list(self.torsion)}

    def __str__(self):
        parts = []
        if self.betti:
            parts.append("Z" if self.betti == 1 else f"Z^{self.betti}")
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) if parts else "0"


def as_integer_matrix(M):
    """Object-dtype 2-d copy of M with Python int entries."""
    A = np.asarray(M)
    if A.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {A.shape}")
    out = np.empty(A.shape, dtype=object)
    out[...] = [[int(v) for v in row] for row in A.tolist()] if A.size else out
    return out


def identity(n):
    I = np.zeros((n, n), dtype=object)
    for i in range(n):
        I[i, i] = 1
    return I


def _min_abs_nonzero(block):
    """(i, j) of a minimal |entry| among the nonzero entries of block, or None."""
    mags = np.abs(block)
    nz = block != 0
    if not nz.any():
        return None
    big = int(np.max(mags)) + 1
    flat = np.where(nz, mags, big).astype(object)
    k = int(np.argmin(flat.ravel()))
    return divmod(k, block.shape[1])


def _reduce(A, U=None, V=None):
    """In-place diagonalisation of A; returns the diagonal length reached.

    Row ops are mirrored on U and column ops on V when given, so that
    U0·M·V0 = A is maintained.
    """
    m, n = A.shape
    t = 0
    while t < min(m, n):
        loc = _min_abs_nonzero(A[t:, t:])
        if loc is None:
            break
        i, j = loc[0] + t, loc[1] + t
        if i != t:
            A[[t, i]] = A[[i, t]]
            if U is not None:
                U[[t, i]] = U[[i, t]]
        if j != t:
            A[:, [t, j]] = A[:, [j, t]]
            if V is not None:
                V[:, [t, j]] = V[:, [j, t]]
        while True:
            p = A[t, t]
            col = A[t + 1:, t]
            rows = np.nonzero(col)[0] + t + 1
            if len(rows):
                q = A[rows, t] // p
                A[rows] -= np.outer(q, A[t])
                if U is not None:
                    U[rows] -= np.outer(q, U[t])
            row = A[t, t + 1:]
            cols = np.nonzero(row)[0] + t + 1
            if len(cols):
                q = A[t, cols] // p
                A[:, cols] -= np.outer(A[:, t], q)
                if V is not None:
                    V[:, cols] -= np.outer(V[:, t], q)
            rest_c = np.nonzero(A[t + 1:, t])[0]
            rest_r = np.nonzero(A[t, t + 1:])[0]
            if len(rest_c) or len(rest_r):
                # remainders are smaller than the pivot: move the smallest in
                best, where = abs(p), None
                for r in rest_c + t + 1:
                    if abs(A[r, t]) < best:
                        best, where = abs(A[r, t]), ("r", r)
                for c in rest_r + t + 1:
                    if abs(A[t, c]) < best:
                        best, where = abs(A[t, c]), ("c", c)
                kind, k = where
                if kind == "r":
                    A[[t, k]] = A[[k, t]]
                    if U is not None:
                        U[[t, k]] = U[[k, t]]
                else:
                    A[:, [t, k]] = A[:, [k, t]]
                    if V is not None:
                        V[:, [t, k]] = V[:, [k, t]]
                continue
            sub = A[t + 1:, t + 1:]
            bad = np.nonzero((sub % p) != 0) if sub.size else ((), ())
            if len(bad[0]):
                r = int(bad[0][0]) + t + 1
                A[t] += A[r]
                if U is not None:
                    U[t] += U[r]
                continue
            break
        if A[t, t] < 0:
            A[t] = -A[t]
            if U is not None:
                U[t] = -U[t]
        t += 1
    return t


def snf(M):
    """Smith normal form: returns U, D, V with U·M·V = D."""
    A = as_integer_matrix(M)
    m, n = A.shape
    U, V = identity(m), identity(n)
    _reduce(A, U, V)
    return SnfResult(U, A, V)


def elementary_divisors(M):
    """Nonzero SNF diagonal entries of M (no transforms tracked)."""
    A = as_integer_matrix(M)
    r = _reduce(A)
    return [int(A[i, i]) for i in range(r)]


def _product_is_zero(A, B):
    if A.shape[1] != B.shape[0]:
        raise ValueError(f"shapes {A.shape} and {B.shape} do not compose")
    if A.size == 0 or B.size == 0:
        return True
    a = int(np.max(np.abs(A))) if A.size else 0
    b = int(np.max(np.abs(B))) if B.size else 0
    if a * b * A.shape[1] < 2**62:
        return not np.any(A.astype(np.int64) @ B.astype(np.int64))
    return not np.any(A.dot(B))


def cohomology_invariants(d_out, d_in, modulus=0):
    """Invariants of ker(d_out)/im(d_in).

    d_out maps the middle group Z^N onward (shape (*, N)); d_in maps into it
    (shape (N, *)). With modulus m > 0 the complex is read over Z/m.
    """
    A, B = as_integer_matrix(d_out), as_integer_matrix(d_in)
    if modulus:
        if A.shape[1] != B.shape[0]:
            raise ValueError(f"shapes {A.shape} and {B.shape} do not compose")
        if A.size and B.size and np.any(A.dot(B) % modulus):
            raise ValueError("d_out·d_in ≠ 0: not a complex")
        return _mod_invariants(A % modulus, B % modulus, modulus)
    if not _product_is_zero(A, B):
        raise ValueError("d_out·d_in ≠ 0: not a complex")
    N = A.shape[1]
    r_out = len(elementary_divisors(A)) if A.size else 0
    divs = elementary_divisors(B) if B.size else []
    return AbelianInvariants(N - r_out - len(divs), tuple(d for d in divs if d > 1))


def _mod_invariants(A, B, m):
    """Group structure of ker(A mod m)/im(B mod m) inside (Z/m)^N."""
    M, N = A.shape
    if m == 1 or N == 0:
        return AbelianInvariants(0, ())
    # K = {x in Z^N : A x ≡ 0 mod m}, as x-parts of ker [A | mI]
    big = np.concatenate([A, m * identity(M)], axis=1) if M else np.zeros((0, N), dtype=object)
    s = snf(big)
    r = len([d for d in s.diagonal if d])
    gens = s.V[:N, r:]
    # basis of the full-rank lattice K: U_P^{-1}·diag(d)
    sp = snf(gens)
    d = sp.diagonal
    if len(d) < N or any(x == 0 for x in d[:N]):
        raise ArithmeticError("cocycle lattice is not full rank")
    L = np.concatenate([B, m * identity(N)], axis=1)
    coords = sp.U.dot(L)
    for i in range(N):
        if np.any(coords[i] % d[i]):
            raise ArithmeticError("image not contained in cocycles")
        coords[i] = coords[i] // d[i]
    divs = elementary_divisors(coords)
    if len(divs) != N:
        raise ArithmeticError("quotient is not finite")
    return AbelianInvariants(0, tuple(x for x in divs if x > 1))


def is_prime(p):
    p = int(p)
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def _check_prime(p):
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")


def row_reduce_mod_p(M, p):
    """Reduced row echelon form over F_p; returns (R, pivot columns)."""
    _check_prime(p)
    A = np.array(M, dtype=object) % p
    A = A.astype(np.int64) if p < 2**31 else A
    m, n = A.shape
    pivots = []
    r = 0
    for c in range(n):
        if r == m:
            break
        nz = np.nonzero(A[r:, c] % p)[0]
        if not len(nz):
            continue
        k = r + int(nz[0])
        if k != r:
            A[[r, k]] = A[[k, r]]
        inv = pow(int(A[r, c]), -1, p)
        A[r] = (A[r] * inv) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if len(others):
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        pivots.append(c)
        r += 1
    return A, pivots


def rank_mod_p(M, p):
    """Rank of M over the field with p elements."""
    A = np.asarray(M)
    _check_prime(p)
    if A.size == 0:
        return 0
    return len(row_reduce_mod_p(A, p)[1])


def nullspace_mod_p(M, p):
    """Basis of {x : M x ≡ 0 mod p} as columns of an (n, k) matrix."""
    A = np.asarray(M)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n, dtype=np.int64)
    R, piv = row_reduce_mod_p(A, p)
    free = [c for c in range(n) if c not in set(piv)]
    K = np.zeros((n, len(free)), dtype=np.int64)
    for j, f in enumerate(free):
        K[f, j] = 1
        for r, c in enumerate(piv):
            K[c, j] = (-int(R[r, f])) % p
    return K
