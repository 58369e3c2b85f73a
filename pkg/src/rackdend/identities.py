"""Exhaustive checks of the combinatorial and cubical identities used in the proofs.

Each check returns a dict {"name", "range", "cases", "pass", "counterexample"}.
"""
import itertools
from math import comb

import numpy as np

from rackdend.combinatorics import (Permutation, ShuffleClass, all_permutations, alpha, alpha_inverse,
                                    alpha_subset, beta, beta_inverse, beta_subset, kappa, nu, phi,
                                    shuffle_count, shuffles, star, triple_shuffles, xi)
from rackdend.cubical import (edges, face_composite, face_vertex, map_edge, restrict_all,
                              normal_form_from_vertex_map, normalize_faces, perm_vertex,
                              preferred_squares, shuffle_embedding, sigma_vertex, simplicial_face)


class _Check:
    def __init__(self, name, rng):
        self.name, self.range, self.cases, self.cex = name, rng, 0, None

    def see(self, ok, cex):
        self.cases += 1
        if not ok and self.cex is None:
            self.cex = cex
        return ok

    def result(self):
        return {"name": self.name, "range": self.range, "cases": self.cases,
                "pass": self.cex is None, "counterexample": self.cex}


def _p(s):
    return list(s.images)


def shuffle_cardinalities(max_total=8):
    c = _Check("shuffle cardinalities", f"p1+p2 <= {max_total}")
    for p1 in range(max_total + 1):
        for p2 in range(max_total + 1 - p1):
            n = p1 + p2
            counts = {cls: len(shuffles(p1, p2, cls)) for cls in ShuffleClass}
            want = {ShuffleClass.ALL: comb(n, p1)}
            if p1 and p2:
                want[ShuffleClass.TOP_FIXED] = comb(n - 1, p1)
                want[ShuffleClass.LEFT_MAX] = comb(n - 1, p1 - 1)
            ok = all(counts[k] == v for k, v in want.items())
            ok &= counts[ShuffleClass.TOP_FIXED] + counts[ShuffleClass.LEFT_MAX] == counts[ShuffleClass.ALL]
            ok &= all(counts[k] == shuffle_count(p1, p2, k) for k in ShuffleClass)
            c.see(ok, {"p1": p1, "p2": p2, "counts": {k.value: v for k, v in counts.items()}})
    return c.result()


def star_sign(max_p=3):
    c = _Check("sign(star(s, g)) = sign(s) sign(g)", f"p, q <= {max_p}")
    for p in range(max_p + 1):
        for q in range(max_p + 1):
            for s in all_permutations(p):
                for g in all_permutations(q):
                    c.see(star(s, g).sign == s.sign * g.sign, {"s": _p(s), "g": _p(g)})
    return c.result()


def alpha_beta(max_p=3, subset_max=2):
    c = _Check("alpha/beta bijections, sign preservation, word formulas",
               f"p_i <= {max_p}; word formulas p_i <= {subset_max}")
    for p1, p2, p3 in itertools.product(range(max_p + 1), repeat=3):
        target = set(triple_shuffles(p1, p2, p3))
        ims_a, ims_b = [], []
        for s in shuffles(p1, p2 + p3):
            for g in shuffles(p2, p3):
                t = alpha(s, g, p1, p2, p3)
                ims_a.append(t)
                s2, g2 = beta_inverse(t, p1, p2, p3)
                ok = beta(s2, g2, p1, p2, p3) == t and s.sign * g.sign == s2.sign * g2.sign
                ok &= alpha_inverse(t, p1, p2, p3) == (s, g)
                if max(p1, p2, p3) <= subset_max:
                    ok &= alpha_subset(s, g, p1, p2, p3) == t
                c.see(ok, {"p": [p1, p2, p3], "sigma": _p(s), "gamma": _p(g)})
        for s in shuffles(p1 + p2, p3):
            for g in shuffles(p1, p2):
                t = beta(s, g, p1, p2, p3)
                ims_b.append(t)
                if max(p1, p2, p3) <= subset_max:
                    c.see(beta_subset(s, g, p1, p2, p3) == t, {"p": [p1, p2, p3], "beta_word": [_p(s), _p(g)]})
        c.see(len(ims_a) == len(set(ims_a)) == len(target) and set(ims_a) == target,
              {"p": [p1, p2, p3], "alpha": "not a bijection"})
        c.see(len(ims_b) == len(set(ims_b)) == len(target) and set(ims_b) == target,
              {"p": [p1, p2, p3], "beta": "not a bijection"})
    return c.result()


def _vmap_equal(m, f, g):
    return all(f(A) == g(A) for A in range(1 << m))


def phi_identities(max_n1=3, max_n2=4):
    """∂_{σ(i),ε}∘φ(σ,i) = σ∘∂_{i,ε} on □_n → □_{n+1}; (-1)^{σ(i)} ε(φ) = (-1)^i ε(σ)."""
    c = _Check("change of variables 1 and 2", f"n <= {max_n1} (vertex maps), n <= {max_n2} (signs)")
    for n in range(0, max_n2 + 1):
        for s in all_permutations(n + 1):
            for i in range(1, n + 2):
                f = phi(s, i)
                c.see((-1) ** s(i) * f.sign == (-1) ** i * s.sign, {"sigma": _p(s), "i": i, "identity": 2})
                if n > max_n1:
                    continue
                for e in (0, 1):
                    lhs = lambda A: face_vertex(n + 1, s(i), e, perm_vertex(f, A))
                    rhs = lambda A: perm_vertex(s, face_vertex(n + 1, i, e, A))
                    c.see(_vmap_equal(n, lhs, rhs), {"sigma": _p(s), "i": i, "eps": e, "identity": 1})
        # ψ is a bijection S_{n+1} × {1..n+1} → S_n × {1..n+1}, (n+1) times over
        if n <= max_n1:
            imgs = [(phi(s, i), s(i)) for s in all_permutations(n + 1) for i in range(1, n + 2)]
            counts = {}
            for x in imgs:
                counts[x] = counts.get(x, 0) + 1
            c.see(len(counts) == len(all_permutations(n)) * (n + 1) and set(counts.values()) == {n + 1},
                  {"n": n, "psi": "fibres not uniform"})
    return c.result()


def nu_xi_kappa(max_n=3):
    """The three change-of-variable identities behind the chain-map property of Σ."""
    c = _Check("nu, xi, kappa identities", f"n <= {max_n}")
    for n in range(0, max_n + 1):
        seen_nu, seen_xi = set(), set()
        for s in all_permutations(n):
            for i in range(1, n + 2):
                v, x = nu(s, i), xi(s, i)
                seen_nu.add(v)
                seen_xi.add(x)
                ok = all(face_vertex(n + 1, i, 1, sigma_vertex(s, k)) == sigma_vertex(v, k + 1)
                         for k in range(n + 1))
                c.see(ok and (-1) ** (i + 1) * s.sign == v.sign, {"map": "nu", "sigma": _p(s), "i": i})
                ok = all(face_vertex(n + 1, i, 0, sigma_vertex(s, k)) == sigma_vertex(x, k)
                         for k in range(n + 1))
                c.see(ok and (-1) ** i * s.sign == (-1) ** (n + 1) * x.sign,
                      {"map": "xi", "sigma": _p(s), "i": i})
        total = len(all_permutations(n + 1))
        c.see(len(seen_nu) == total and len(seen_xi) == total, {"n": n, "bijection": "nu/xi"})
        evens = [s for s in all_permutations(n + 1) if s.sign > 0]
        images = set()
        for s in evens:
            for i in range(1, n + 1):
                t, j = kappa(s, i)
                images.add((t, j))
                ok = all(sigma_vertex(s, simplicial_face(n + 1, i, k)) == sigma_vertex(t, simplicial_face(n + 1, i, k))
                         for k in range(n + 1))
                c.see(ok and t.sign == -s.sign, {"map": "kappa", "sigma": _p(s), "i": i})
        odds = len(all_permutations(n + 1)) - len(evens)
        c.see(len(images) == odds * n, {"n": n, "bijection": "kappa"})
    return c.result()


def cubical_relations(max_n=4):
    c = _Check("cubical relations", f"n <= {max_n}")
    for n in range(2, max_n + 1):
        for i, j in itertools.combinations(range(1, n + 1), 2):
            for e, w in itertools.product((0, 1), repeat=2):
                lhs = lambda A: face_vertex(n, i, e, face_vertex(n - 1, j - 1, w, A))
                rhs = lambda A: face_vertex(n, j, w, face_vertex(n - 1, i, e, A))
                c.see(_vmap_equal(n - 2, lhs, rhs), {"n": n, "i": i, "j": j, "eps": e, "omega": w})
    return c.result()


def unique_factorization(max_n=4, samples=200, seed=0):
    c = _Check("face composites normalize uniquely", f"m < n <= {max_n}, {samples} samples")
    rng = np.random.default_rng(seed)
    for _ in range(samples):
        n = int(rng.integers(1, max_n + 1))
        r = int(rng.integers(1, n + 1))
        faces = [(int(rng.integers(1, d + 1)), int(rng.integers(0, 2))) for d in range(n, n - r, -1)]
        m = n - r
        norm = normalize_faces(faces)
        read = normal_form_from_vertex_map(m, n, lambda A: face_composite(n, faces, A))
        ok = _vmap_equal(m, lambda A: face_composite(n, faces, A), lambda A: face_composite(n, norm, A))
        ok &= norm == read and all(a[0] > b[0] for a, b in zip(norm, norm[1:]))
        c.see(ok, {"n": n, "faces": faces})
    return c.result()


def faces_are_trunk_maps(max_n=4):
    c = _Check("faces send preferred squares to preferred squares", f"n <= {max_n}")
    for n in range(1, max_n + 1):
        target = set(preferred_squares(n))
        for i in range(1, n + 1):
            for e in (0, 1):
                vm = lambda A: face_vertex(n, i, e, A)
                ok = all(tuple(map_edge(vm, ed) for ed in sq) in target for sq in preferred_squares(n - 1))
                ok &= all(map_edge(vm, ed) is not None for ed in edges(n - 1))
                c.see(ok, {"n": n, "i": i, "eps": e})
    return c.result()


def _triple_embedding(s, ps, j):
    off = sum(ps[:j - 1])
    head = (1 << off) - 1

    def vm(A):
        return perm_vertex(s, head | (A << off))
    return vm


def rho_composition(max_p=2, rack=None):
    """ρ_{σ∘(1⋆γ)} = (1×ρ_γ)∘ρ_σ and ρ_{σ∘(γ⋆1)} = (ρ_γ×1)∘ρ_σ, as vertex maps and on rack labels."""
    c = _Check("rho composition lemma", f"p_i <= {max_p}")
    for ps in itertools.product(range(max_p + 1), repeat=3):
        p1, p2, p3 = ps
        n = p1 + p2 + p3
        cases = []
        for s in shuffles(p1, p2 + p3):
            for g in shuffles(p2, p3):
                t = s * star(Permutation.identity(p1), g)
                right = [shuffle_embedding(s, p1, p2 + p3, 1),
                         lambda A, s=s, g=g: shuffle_embedding(s, p1, p2 + p3, 2)(shuffle_embedding(g, p2, p3, 1)(A)),
                         lambda A, s=s, g=g: shuffle_embedding(s, p1, p2 + p3, 2)(shuffle_embedding(g, p2, p3, 2)(A))]
                cases.append(("alpha", s, g, t, right))
        for s in shuffles(p1 + p2, p3):
            for g in shuffles(p1, p2):
                t = s * star(g, Permutation.identity(p3))
                right = [lambda A, s=s, g=g: shuffle_embedding(s, p1 + p2, p3, 1)(shuffle_embedding(g, p1, p2, 1)(A)),
                         lambda A, s=s, g=g: shuffle_embedding(s, p1 + p2, p3, 1)(shuffle_embedding(g, p1, p2, 2)(A)),
                         shuffle_embedding(s, p1 + p2, p3, 2)]
                cases.append(("beta", s, g, t, right))
        for kind, s, g, t, right in cases:
            ok = all(_vmap_equal(ps[j], _triple_embedding(t, ps, j + 1), right[j]) for j in range(3))
            if ok and rack is not None:
                ok = all(np.array_equal(restrict_all(rack, n, ps[j], _triple_embedding(t, ps, j + 1)),
                                        restrict_all(rack, n, ps[j], right[j])) for j in range(3))
            c.see(ok, {"kind": kind, "p": list(ps), "sigma": _p(s), "gamma": _p(g)})
    return c.result()


def combinatorial_suite(rack=None):
    return [shuffle_cardinalities(8), star_sign(3), alpha_beta(3, 2), phi_identities(3, 4), nu_xi_kappa(3),
            cubical_relations(4), unique_factorization(4), faces_are_trunk_maps(4), rho_composition(2, rack)]
