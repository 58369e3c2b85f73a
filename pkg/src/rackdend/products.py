"""Dendriform products on rack cochains, ⋆ = ≻ + ≺, and the cup product.

(f1 ≻ f2)(x) = Σ_{σ ∈ Sh^{p1+p2}} ε(σ) f1(y) f2(z)   (σ(p1+p2) = p1+p2)
(f1 ≺ f2)(x) = Σ_{σ ∈ Sh^{p1}}    ε(σ) f1(y) f2(z)   (σ(p1) = p1+p2)

with z_k = x_{σ(p1+k)} and y_k = x_{i_1} ▷ ... ▷ x_{i_j} ▷ x_{σ(k)}, the
i_l running increasingly over the indices of the second block that are
smaller than σ(k), right-bracketed.
"""
import itertools
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from rackdend import kernels
from rackdend.cochain import Cochain, differential, index_tuple
from rackdend.combinatorics import ShuffleClass, shuffles
from rackdend.rings import Integers, TensorRing


@dataclass
class ProductReport:
    identity: str
    degrees: list = field(default_factory=list)
    trials: int = 0
    passed: bool = True
    counterexample: dict = None

    def fail(self, cex):
        if self.passed:
            self.passed = False
            self.counterexample = cex

    def as_dict(self):
        return {"identity": self.identity, "degrees": [list(d) for d in self.degrees],
                "trials": self.trials, "pass": self.passed, "counterexample": self.counterexample}


def y_word(sigma, k, block):
    """0-based positions for y_k: sorted indices of `block` below σ(k), then σ(k)."""
    s = sigma(k)
    return [l - 1 for l in sorted(l for l in block if l < s)] + [s - 1]


@lru_cache(maxsize=None)
def shuffle_words(p1, p2, cls):
    """[(sign, y-words, z-words)] for each shuffle of the class."""
    out = []
    for s in shuffles(p1, p2, cls):
        second = [s(p1 + k) for k in range(1, p2 + 1)]
        ys = [y_word(s, k, second) for k in range(1, p1 + 1)]
        zs = [[s(p1 + k) - 1] for k in range(1, p2 + 1)]
        out.append((s.sign, ys, zs))
    return tuple(out)


@lru_cache(maxsize=4096)
def _gather(table_owner, n, words):
    if not words:
        return np.zeros(table_owner.size ** n, dtype=np.int64)
    return kernels.bracket_gather(table_owner.table, n, [list(w) for w in words])


def _freeze(words):
    return tuple(tuple(w) for w in words)


def _check_pair(f1, f2, tag):
    if f1.tag != tag or f2.tag != tag:
        raise ValueError(f"expected {tag} cochains")
    if f1.structure is not f2.structure:
        raise ValueError("cochains live on different structures")
    if f1.ring is not f2.ring and f1.ring != f2.ring:
        raise ValueError("cochains have different coefficient rings")


def _dendri(f1, f2, cls):
    _check_pair(f1, f2, "rack")
    X, ring = f1.structure, f1.ring
    p1, p2 = f1.degree, f2.degree
    n = p1 + p2
    out = None
    for sign, ys, zs in shuffle_words(p1, p2, cls):
        a = f1.values[_gather(X, n, _freeze(ys))]
        b = f2.values[_gather(X, n, _freeze(zs))]
        term = ring.mul(a, b)
        term = term if sign > 0 else -term
        out = term if out is None else out + term
    if out is None:
        shape = ring.mul(f1.values[:1], f2.values[:1]).shape[1:]
        out = np.zeros((X.size ** n,) + shape, dtype=np.result_type(f1.values, f2.values))
    return f1._like(ring.reduce(out), n)


def succ(f1, f2):
    """f1 ≻ f2."""
    return _dendri(f1, f2, ShuffleClass.TOP_FIXED)


def prec(f1, f2):
    """f1 ≺ f2."""
    return _dendri(f1, f2, ShuffleClass.LEFT_MAX)


def star(f1, f2):
    """f1 ⋆ f2 = f1 ≻ f2 + f1 ≺ f2."""
    return _dendri(f1, f2, ShuffleClass.ALL)


def cup(f1, f2):
    """(f1 ∪ f2)(x) = f1(x_1..x_{p1}) · f2(x_{p1+1}..x_{p1+p2})."""
    _check_pair(f1, f2, "group")
    G, ring = f1.structure, f1.ring
    p1, p2 = f1.degree, f2.degree
    s = G.size
    a = np.repeat(f1.values, s ** p2, axis=0)
    b = np.tile(f2.values, (s ** p1,) + (1,) * (f2.values.ndim - 1))
    return f1._like(ring.reduce(ring.mul(a, b)), p1 + p2)


# universal cochains: value at tuple t is the basis vector e_t

def identity_cochain(tag, structure, degree):
    """The cochain whose value at the j-th tuple is e_j (TensorRing)."""
    N = structure.size ** degree
    return Cochain(tag, structure, degree, np.eye(N, dtype=np.int64), TensorRing())


def _decode_basis(idx, sizes_degrees):
    return [list(index_tuple(int(i), s, d)) for i, (s, d) in zip(idx, sizes_degrees)]


def _basis_cex(diff, X, degrees, n):
    """First nonzero entry of a universal difference tensor as a counterexample."""
    loc = np.argwhere(diff != 0)[0]
    point, basis = int(loc[0]), loc[1:]
    return {"kind": "basis", "structure": X.as_dict(), "degrees": list(degrees),
            "basis_tuples": _decode_basis(basis, [(X.size, d) for d in degrees]),
            "point": list(index_tuple(point, X.size, n)),
            "difference": int(diff[tuple(loc)])}


def _random_cex(X, fs, n, lhs, rhs, ring):
    d = ring.reduce(lhs.values - rhs.values)
    bad = np.nonzero(np.any(d.reshape(d.shape[0], -1) != 0, axis=1))[0]
    point = int(bad[0]) if len(bad) else 0
    return {"kind": "random", "structure": X.as_dict(), "ring": ring.descriptor(),
            "cochains": [f.as_dict() for f in fs],
            "point": list(index_tuple(point, X.size, n)),
            "lhs": ring.to_json(lhs.values[point]), "rhs": ring.to_json(rhs.values[point])}


DENDRIFORM_AXIOMS = ("x≻(y≻z) = (x≻y)≻z + (x≺y)≻z",
                     "(x≻y)≺z = x≻(y≺z)",
                     "(x≺y)≺z = x≺(y≺z) + x≺(y≻z)")


def dendriform_sides(x, y, z, succ_=succ, prec_=prec):
    """[(lhs, rhs)] for the three axioms."""
    return [
        (succ_(x, succ_(y, z)), succ_(succ_(x, y), z) + succ_(prec_(x, y), z)),
        (prec_(succ_(x, y), z), succ_(x, prec_(y, z))),
        (prec_(prec_(x, y), z), prec_(x, prec_(y, z)) + prec_(x, succ_(y, z))),
    ]


def degree_triples(max_total):
    return [t for t in itertools.product(range(max_total + 1), repeat=3) if sum(t) <= max_total]


def check_dendriform(rack, ring=None, max_degree=3, trials=0, rng=None, exhaustive=True,
                     degrees=None, succ_=succ, prec_=prec):
    """Verify the three dendriform axioms.

    exhaustive: on all triples of basis cochains at once (universal tensor
    cochains) for every degree triple of total ≤ max_degree.
    trials: additionally on that many random triples over `ring`.
    Returns one ProductReport per axiom.
    """
    triples = degrees or degree_triples(max_degree)
    reports = [ProductReport(name) for name in DENDRIFORM_AXIOMS]
    for r in reports:
        r.degrees = [list(t) for t in triples]
    if exhaustive:
        for t in triples:
            fs = [identity_cochain("rack", rack, d) for d in t]
            for r, (lhs, rhs) in zip(reports, dendriform_sides(*fs, succ_=succ_, prec_=prec_)):
                diff = lhs.values - rhs.values
                if np.any(diff):
                    r.fail(_basis_cex(diff, rack, t, sum(t)))
    if trials:
        rng = rng if rng is not None else np.random.default_rng(0)
        ring = ring if ring is not None else Integers()
        for _ in range(trials):
            for t in triples:
                fs = [Cochain.random("rack", rack, d, ring, rng) for d in t]
                for r, (lhs, rhs) in zip(reports, dendriform_sides(*fs, succ_=succ_, prec_=prec_)):
                    if not lhs.equals(rhs):
                        r.fail(_random_cex(rack, fs, sum(t), lhs, rhs, ring))
        for r in reports:
            r.trials = trials
    return reports


def leibniz_sides(f1, f2, product, action=None):
    """d(f1 ∘ f2) and d f1 ∘ f2 + (-1)^{p1} f1 ∘ d f2 for a product ∘."""
    lhs = differential(product(f1, f2))
    a = product(differential(f1), f2)
    b = product(f1, differential(f2))
    rhs = a + b if f1.degree % 2 == 0 else a - b
    return lhs, rhs


def check_leibniz(rack, ring=None, degrees=((1, 1),), trials=0, rng=None, exhaustive=True):
    """Graded Leibniz rule of d_R for ≻ and for ≺."""
    reports = [ProductReport(f"d(f1{s}f2) = df1{s}f2 + (-1)^p1 f1{s}df2") for s in "≻≺"]
    for r in reports:
        r.degrees = [list(d) for d in degrees]
        r.trials = trials
    rng = rng if rng is not None else np.random.default_rng(0)
    ring = ring if ring is not None else Integers()
    for d in degrees:
        if exhaustive:
            fs = [identity_cochain("rack", rack, p) for p in d]
            for r, prod in zip(reports, (succ, prec)):
                lhs, rhs = leibniz_sides(*fs, prod)
                diff = lhs.values - rhs.values
                if np.any(diff):
                    r.fail(_basis_cex(diff, rack, d, sum(d) + 1))
        for _ in range(trials):
            fs = [Cochain.random("rack", rack, p, ring, rng) for p in d]
            for r, prod in zip(reports, (succ, prec)):
                lhs, rhs = leibniz_sides(*fs, prod)
                if not lhs.equals(rhs):
                    r.fail(_random_cex(rack, fs, sum(d) + 1, lhs, rhs, ring))
    return reports


def check_star_associative(rack, ring=None, max_degree=3, trials=0, rng=None, exhaustive=True,
                           degrees=None):
    r = ProductReport("(x⋆y)⋆z = x⋆(y⋆z)")
    triples = degrees or degree_triples(max_degree)
    r.degrees = [list(t) for t in triples]
    r.trials = trials
    if exhaustive:
        for t in triples:
            fs = [identity_cochain("rack", rack, d) for d in t]
            diff = star(star(fs[0], fs[1]), fs[2]).values - star(fs[0], star(fs[1], fs[2])).values
            if np.any(diff):
                r.fail(_basis_cex(diff, rack, t, sum(t)))
    rng = rng if rng is not None else np.random.default_rng(0)
    ring = ring if ring is not None else Integers()
    for _ in range(trials):
        for t in triples:
            fs = [Cochain.random("rack", rack, d, ring, rng) for d in t]
            lhs, rhs = star(star(fs[0], fs[1]), fs[2]), star(fs[0], star(fs[1], fs[2]))
            if not lhs.equals(rhs):
                r.fail(_random_cex(rack, fs, sum(t), lhs, rhs, ring))
    return r


def check_cup_leibniz(group, ring=None, degrees=((1, 1),), trials=0, rng=None, exhaustive=True):
    r = ProductReport("d(f∪g) = df∪g + (-1)^p1 f∪dg")
    r.degrees = [list(d) for d in degrees]
    r.trials = trials
    rng = rng if rng is not None else np.random.default_rng(0)
    ring = ring if ring is not None else Integers()
    for d in degrees:
        if exhaustive:
            fs = [identity_cochain("group", group, p) for p in d]
            lhs, rhs = leibniz_sides(*fs, cup)
            diff = lhs.values - rhs.values
            if np.any(diff):
                r.fail(_basis_cex(diff, group, d, sum(d) + 1))
        for _ in range(trials):
            fs = [Cochain.random("group", group, p, ring, rng) for p in d]
            lhs, rhs = leibniz_sides(*fs, cup)
            if not lhs.equals(rhs):
                r.fail(_random_cex(group, fs, sum(d) + 1, lhs, rhs, ring))
    return r


def check_cup_associative(group, max_degree=3):
    r = ProductReport("(f∪g)∪h = f∪(g∪h)")
    r.degrees = degree_triples(max_degree)
    for t in r.degrees:
        fs = [identity_cochain("group", group, d) for d in t]
        diff = cup(cup(fs[0], fs[1]), fs[2]).values - cup(fs[0], cup(fs[1], fs[2])).values
        if np.any(diff):
            r.fail(_basis_cex(diff, group, t, sum(t)))
    return r


def shuffle_class_counts(p1, p2):
    """(|Sh^{p1+p2}|, |Sh^{p1}|, |Sh|) as used by ≻, ≺ and ⋆."""
    return tuple(len(shuffles(p1, p2, c)) for c in
                 (ShuffleClass.TOP_FIXED, ShuffleClass.LEFT_MAX, ShuffleClass.ALL))


# the same products computed on the cubical side, through ρ_σ

def succ_cubical(f1, f2, cls=ShuffleClass.TOP_FIXED):
    """Products via ρ_σ = ((σ∘i_{p1})*, (σ∘i_{p2})*) on trunk maps; pointwise, slow."""
    from rackdend.cubical import RackCubeLabel, rho_sigma
    from rackdend.cochain import all_tuples, tuple_index

    _check_pair(f1, f2, "rack")
    X, ring = f1.structure, f1.ring
    p1, p2 = f1.degree, f2.degree
    n = p1 + p2
    vals = []
    for xs in all_tuples(X.size, n).tolist():
        L = RackCubeLabel(X, xs)
        acc = None
        for s in shuffles(p1, p2, cls):
            a, b = rho_sigma(L, s, p1, p2)
            ia, ib = tuple_index(a.gens, X.size), tuple_index(b.gens, X.size)
            term = ring.mul(f1.values[ia:ia + 1], f2.values[ib:ib + 1])[0]
            term = term if s.sign > 0 else -term
            acc = term if acc is None else acc + term
        if acc is None:
            acc = ring.mul(f1.values[:1], f2.values[:1])[0] * 0
        vals.append(acc)
    return f1._like(ring.reduce(np.array(vals)), n)


def prec_cubical(f1, f2):
    return succ_cubical(f1, f2, ShuffleClass.LEFT_MAX)
