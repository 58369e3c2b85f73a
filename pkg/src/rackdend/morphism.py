"""The cochain morphism S: C(G, A) → CR(Conj G, A) and its checks.

S^n(f)(x_1..x_n) = Σ_{σ ∈ S_n} ε(σ) f(y_1..y_n),
y_k = x_{i_1} ▷ ... ▷ x_{i_j} ▷ x_{σ(k)} with i_1 < ... < i_j the indices
among σ(k+1), ..., σ(n) smaller than σ(k), right-bracketed in Conj(G).
"""
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from rackdend import kernels
from rackdend.cochain import (Cochain, all_tuples, diff_matrix, tuple_index)
from rackdend.combinatorics import all_permutations
from rackdend.cubical import (GroupCubeFunctor, RackCubeLabel, enumerate_group_functors,
                              face_vertex, functor_from_labels, lambda_tuple)
from rackdend.linalg import nullspace_mod_p, rank_mod_p
from rackdend.products import ProductReport, cup, identity_cochain, star
from rackdend.rings import Integers
from rackdend.structures import conj_rack

S_GUARD = 6
COMPOSITE_MAX_N = 2
COMPOSITE_MAX_TUPLES = 64


@dataclass
class MorphismReport:
    group: str
    degrees: list = field(default_factory=list)
    chain_map: bool = None
    algebra_morphism: bool = None
    injectivity: dict = None
    details: list = field(default_factory=list)

    @property
    def passed(self):
        flags = [self.chain_map, self.algebra_morphism]
        if self.injectivity is not None:
            flags.append(self.injectivity.get("injective"))
        return all(f is not False for f in flags)

    def as_dict(self):
        return {"group": self.group, "degrees": self.degrees, "chain_map": self.chain_map,
                "algebra_morphism": self.algebra_morphism, "injectivity": self.injectivity,
                "details": self.details, "pass": self.passed}


@lru_cache(maxsize=64)
def _conj(G):
    return conj_rack(G)


@lru_cache(maxsize=None)
def s_words(n):
    """[(sign, words)] over σ ∈ S_n; word k lists the positions of y_k."""
    out = []
    for s in all_permutations(n):
        words = []
        for k in range(1, n + 1):
            later = [s(j) for j in range(k + 1, n + 1)]
            words.append(tuple([l - 1 for l in sorted(l for l in later if l < s(k))] + [s(k) - 1]))
        out.append((s.sign, tuple(words)))
    return tuple(out)


@lru_cache(maxsize=256)
def _s_gather(X, n, words):
    return kernels.bracket_gather(X.table, n, [list(w) for w in words])


def S_map(f):
    """S^n f as a rack cochain on Conj(G)."""
    if f.tag != "group":
        raise ValueError("S_map needs a group cochain")
    n = f.degree
    if n > S_GUARD:
        raise ValueError(f"S^{n} needs {n}! terms per tuple; guard is n ≤ {S_GUARD}")
    X = _conj(f.structure)
    if n == 0:
        return Cochain("rack", X, 0, f.values.copy(), f.ring)
    out = None
    for sign, words in s_words(n):
        term = f.values[_s_gather(X, n, words)]
        term = term if sign > 0 else -term
        out = term if out is None else out + term
    return Cochain("rack", X, n, f.ring.reduce(out), f.ring)


def S_matrix(G, n):
    """Integer matrix of S^n in the tuple bases."""
    return S_map(identity_cochain("group", G, n)).values


def verify_chain_map(G, max_degree=2, coeff="Z"):
    """d_R ∘ S^n = S^{n+1} ∘ d_G as exact integer matrices.

    Checks the squares C^n → CR^{n+1} for n = 0..max_degree-1, so S is
    compared up to degree max_degree.
    """
    X = _conj(G)
    rep = MorphismReport(G.name or f"|G|={G.size}", list(range(max_degree + 1)))
    ok = True
    for n in range(max_degree):
        lhs = diff_matrix("rack", X, n).astype(object).dot(S_matrix(G, n).astype(object))
        rhs = S_matrix(G, n + 1).astype(object).dot(diff_matrix("group", G, n).astype(object))
        good = bool(np.array_equal(lhs, rhs))
        entry = {"n": n, "equal": good}
        if not good:
            r, c = np.argwhere(lhs != rhs)[0]
            entry["first_mismatch"] = {"row_tuple": list(np.unravel_index(r, (G.size,) * (n + 1))),
                                       "basis_tuple": list(np.unravel_index(c, (G.size,) * n)),
                                       "lhs": int(lhs[r, c]), "rhs": int(rhs[r, c])}
            entry["first_mismatch"] = {k: [int(x) for x in v] if isinstance(v, list) else v
                                       for k, v in entry["first_mismatch"].items()}
        rep.details.append(entry)
        ok &= good
    rep.chain_map = ok
    return rep


def check_algebra_morphism(G, degrees, ring=None, trials=0, rng=None, exhaustive=True):
    """S(f ∪ g) = S(f) ⋆ S(g), on all basis pairs and/or random pairs."""
    r = ProductReport("S(f∪g) = S(f)⋆S(g)")
    r.degrees = [list(d) for d in degrees]
    r.trials = trials
    X = _conj(G)
    for p1, p2 in degrees:
        if exhaustive:
            f, g = identity_cochain("group", G, p1), identity_cochain("group", G, p2)
            lhs, rhs = S_map(cup(f, g)), star(S_map(f), S_map(g))
            diff = lhs.values - rhs.values
            if np.any(diff):
                loc = np.argwhere(diff != 0)[0]
                r.fail({"kind": "basis", "group": G.as_dict(), "degrees": [p1, p2],
                        "basis_tuples": [list(np.unravel_index(int(loc[1]), (G.size,) * p1)),
                                         list(np.unravel_index(int(loc[2]), (G.size,) * p2))],
                        "point": [int(v) for v in np.unravel_index(int(loc[0]), (X.size,) * (p1 + p2))],
                        "difference": int(diff[tuple(loc)])})
        rng = rng if rng is not None else np.random.default_rng(0)
        ring = ring if ring is not None else Integers()
        for _ in range(trials):
            f = Cochain.random("group", G, p1, ring, rng)
            g = Cochain.random("group", G, p2, ring, rng)
            lhs, rhs = S_map(cup(f, g)), star(S_map(f), S_map(g))
            if not lhs.equals(rhs):
                r.fail({"kind": "random", "group": G.as_dict(), "ring": ring.descriptor(),
                        "cochains": [f.as_dict(), g.as_dict()]})
    return r


def verify_algebra_morphism(G, ring=None, degrees=((1, 1),), trials=0, rng=None, exhaustive=True):
    rep = MorphismReport(G.name or f"|G|={G.size}", [list(d) for d in degrees])
    r = check_algebra_morphism(G, degrees, ring, trials, rng, exhaustive)
    rep.algebra_morphism = r.passed
    rep.details.append(r.as_dict())
    return rep


def _fix(M):
    return np.asarray(M, dtype=np.int64)


def induced_H1(G, p):
    """(dim H¹(G, Z/p), dim HR¹(Conj G, Z/p), rank of [S¹]) over F_p."""
    X = _conj(G)
    dG2, dG1 = _fix(diff_matrix("group", G, 1)), _fix(diff_matrix("group", G, 0))
    dR2, dR1 = _fix(diff_matrix("rack", X, 1)), _fix(diff_matrix("rack", X, 0))
    ZG = nullspace_mod_p(dG2, p)
    h1_g = ZG.shape[1] - rank_mod_p(dG1, p)
    h1_r = dR1.shape[0] - rank_mod_p(dR2, p) - rank_mod_p(dR1, p)
    S1 = _fix(S_matrix(G, 1))
    img = (S1 @ ZG) % p
    rB = rank_mod_p(dR1, p)
    rank = rank_mod_p(np.concatenate([img, dR1], axis=1), p) - rB
    return h1_g, h1_r, rank


def injectivity_report(G, p):
    h_g, h_r, rank = induced_H1(G, p)
    return {"p": p, "dim_H1_group": h_g, "dim_HR1_rack": h_r, "rank_S1": rank,
            "injective": rank == h_g}


def composite_S_matrix(G, n):
    """S^n through (η*)⁻¹ ∘ I ∘ T ∘ Σ ∘ λ, evaluated literally per tuple.

    For x ∈ Conj(G)^n: F = η⁻¹(x) is a RackCubeLabel; inc reads its edge
    labels as morphisms of G; θ turns the labeling into a functor □_n → G
    (checked functorial); for each σ, λ(F∘σ) is the simplex tuple fed to f.
    """
    if n > COMPOSITE_MAX_N or G.size ** n > COMPOSITE_MAX_TUPLES:
        raise ValueError(f"composite oracle guarded to n ≤ {COMPOSITE_MAX_N}, |G|^n ≤ {COMPOSITE_MAX_TUPLES}")
    X = _conj(G)
    N = G.size ** n
    M = np.zeros((N, N), dtype=np.int64)
    perms = all_permutations(n)
    for t, xs in enumerate(all_tuples(X.size, n).tolist()):
        L = RackCubeLabel(X, xs)                       # η⁻¹
        F = functor_from_labels(G, n, L.label)         # θ ∘ inc
        for s in perms:                                # Σ and λ
            y = F.along(s)
            M[t, tuple_index(y, G.size)] += s.sign
    return M


def composite_S_check(G, n):
    return bool(np.array_equal(composite_S_matrix(G, n), _fix(S_matrix(G, n))))


def sigma_chain_map_full_nerve(G, n):
    """Σ∘d_Δ = d_□∘Σ from C^n_Δ(G) to C^{n+1} of the full cubical nerve of G.

    Cells of the full nerve are all functors □_m → G (every vertex potential
    assignment), so this does not rely on the tuple-indexed subcomplex.
    """
    def sigma_mat(m):
        cells = list(enumerate_group_functors(G, m))
        M = np.zeros((len(cells), G.size ** m), dtype=np.int64)
        for c, F in enumerate(cells):
            for s in all_permutations(m):
                M[c, tuple_index(F.along(s), G.size)] += s.sign
        return cells, M

    def cube_diff(m):
        src = {F.potentials: k for k, F in enumerate(enumerate_group_functors(G, m))}
        tgt = list(enumerate_group_functors(G, m + 1))
        D = np.zeros((len(tgt), len(src)), dtype=np.int64)
        for r, F in enumerate(tgt):
            for i in range(1, m + 2):
                for e in (0, 1):
                    Fi = F.precompose(m, lambda A, i=i, e=e: face_vertex(m + 1, i, e, A))
                    D[r, src[Fi.potentials]] += (-1) ** i * (1 if e == 0 else -1)
        return D

    _, Sn = sigma_mat(n)
    _, Sn1 = sigma_mat(n + 1)
    lhs = cube_diff(n) @ Sn
    rhs = Sn1 @ _fix(diff_matrix("group", G, n))
    return bool(np.array_equal(lhs, rhs))


def functor_roundtrip(G, gens):
    """λ(extend(gens)) == gens."""
    from rackdend.cubical import extend_group_functor
    return lambda_tuple(extend_group_functor(G, gens)) == tuple(gens)


def morphism_report(G, p=None, max_degree=2, alg_degrees=((1, 1),)):
    rep = verify_chain_map(G, max_degree)
    alg = check_algebra_morphism(G, alg_degrees)
    rep.algebra_morphism = alg.passed
    rep.details.append(alg.as_dict())
    if p is not None:
        rep.injectivity = injectivity_report(G, p)
    return rep


__all__ = ["GroupCubeFunctor", "MorphismReport", "S_map", "S_matrix", "check_algebra_morphism",
           "composite_S_check", "composite_S_matrix", "induced_H1", "injectivity_report",
           "morphism_report", "sigma_chain_map_full_nerve", "verify_algebra_morphism",
           "verify_chain_map"]
