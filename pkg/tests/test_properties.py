"""Property tests over random racks, groups and cochains."""
import numpy as np
from hypothesis import given, settings, strategies as st

from rackdend.cochain import Cochain, differential
from rackdend.combinatorics import (Permutation, ShuffleClass, alpha, alpha_inverse, alpha_subset, beta,
                                    beta_inverse, beta_subset, shuffles)
from rackdend.morphism import S_map
from rackdend.products import cup, dendriform_sides, leibniz_sides, prec, star, succ
from rackdend.rings import Integers, IntegersMod, MatrixRing
from rackdend.structures import (FiniteRack, cyclic_group, direct_product, group_fixture, rack_fixture)

SETTINGS = settings(max_examples=40, deadline=None)


@st.composite
def racks(draw):
    kind = draw(st.sampled_from(["permutation", "alexander", "fixture"]))
    if kind == "permutation":
        # x▷y = π(y) is a rack for every permutation π
        k = draw(st.integers(1, 4))
        pi = draw(st.permutations(range(k)))
        return FiniteRack(np.tile(np.array(pi), (k, 1)))
    if kind == "alexander":
        m = draw(st.integers(2, 5))
        t = draw(st.sampled_from([u for u in range(1, m) if np.gcd(u, m) == 1]))
        x = np.arange(m)
        return FiniteRack((t * x[None, :] + (1 - t) * x[:, None]) % m)
    return rack_fixture(draw(st.sampled_from(["T2", "R3", "ConjS3", "ConjZ2xZ2"])))


@st.composite
def groups(draw):
    kind = draw(st.sampled_from(["cyclic", "product", "S3"]))
    if kind == "cyclic":
        return cyclic_group(draw(st.integers(1, 5)))
    if kind == "product":
        return direct_product(cyclic_group(draw(st.integers(1, 3))), cyclic_group(draw(st.integers(1, 2))))
    return group_fixture("S3")


rings = st.sampled_from([Integers(), IntegersMod(6), MatrixRing(2), MatrixRing(2, 3)])
seeds = st.integers(0, 2**32 - 1)


def _small(X, total):
    return X.size ** total <= 1300


@SETTINGS
@given(racks(), rings, st.integers(0, 2), seeds)
def test_d_squared_zero(X, ring, n, seed):
    f = Cochain.random("rack", X, n, ring, np.random.default_rng(seed))
    assert differential(differential(f)).is_zero()


@SETTINGS
@given(racks(), rings, st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), seeds)
def test_dendriform_axioms(X, ring, degs, seed):
    if not _small(X, sum(degs)):
        return
    rng = np.random.default_rng(seed)
    fs = [Cochain.random("rack", X, d, ring, rng) for d in degs]
    for lhs, rhs in dendriform_sides(*fs):
        assert lhs.equals(rhs)
    x, y, z = fs
    assert star(star(x, y), z).equals(star(x, star(y, z)))


@SETTINGS
@given(racks(), rings, st.tuples(st.integers(0, 2), st.integers(0, 2)), seeds)
def test_leibniz(X, ring, degs, seed):
    if not _small(X, sum(degs) + 1):
        return
    rng = np.random.default_rng(seed)
    f1, f2 = (Cochain.random("rack", X, d, ring, rng) for d in degs)
    for prod in (succ, prec, star):
        lhs, rhs = leibniz_sides(f1, f2, prod)
        assert lhs.equals(rhs)


@SETTINGS
@given(racks(), rings, st.tuples(st.integers(0, 2), st.integers(0, 2)), seeds)
def test_star_is_sum(X, ring, degs, seed):
    if not _small(X, sum(degs)):
        return
    rng = np.random.default_rng(seed)
    f1, f2 = (Cochain.random("rack", X, d, ring, rng) for d in degs)
    assert star(f1, f2).equals(succ(f1, f2) + prec(f1, f2))


@SETTINGS
@given(st.permutations(range(1, 6)), st.permutations(range(1, 6)))
def test_permutation_group_laws(a, b):
    s, t = Permutation(a), Permutation(b)
    assert (s * t).sign == s.sign * t.sign
    assert (s * s.inverse()).is_identity() and (s.inverse() * s).is_identity()
    assert all((s * t)(k) == s(t(k)) for k in range(1, 6))


@SETTINGS
@given(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2), st.data())
def test_alpha_beta_roundtrip(p1, p2, p3, data):
    sa = data.draw(st.sampled_from(shuffles(p1, p2 + p3)))
    ga = data.draw(st.sampled_from(shuffles(p2, p3)))
    tau = alpha(sa, ga, p1, p2, p3)
    assert tau == alpha_subset(sa, ga, p1, p2, p3)
    assert alpha_inverse(tau, p1, p2, p3) == (sa, ga)
    assert tau.sign == sa.sign * ga.sign
    sb = data.draw(st.sampled_from(shuffles(p1 + p2, p3)))
    gb = data.draw(st.sampled_from(shuffles(p1, p2)))
    tau = beta(sb, gb, p1, p2, p3)
    assert tau == beta_subset(sb, gb, p1, p2, p3)
    assert beta_inverse(tau, p1, p2, p3) == (sb, gb)


@SETTINGS
@given(st.integers(0, 4), st.integers(0, 4))
def test_shuffle_classes_partition(p1, p2):
    allx = set(shuffles(p1, p2))
    top = set(shuffles(p1, p2, ShuffleClass.TOP_FIXED))
    left = set(shuffles(p1, p2, ShuffleClass.LEFT_MAX))
    assert top | left == allx and not (top & left)


@SETTINGS
@given(groups(), st.integers(0, 2), seeds)
def test_S_chain_map(G, n, seed):
    f = Cochain.random("group", G, n, Integers(), np.random.default_rng(seed))
    assert S_map(differential(f)).equals(differential(S_map(f)))


@SETTINGS
@given(groups(), rings, st.tuples(st.integers(0, 2), st.integers(0, 2)), seeds)
def test_S_algebra_morphism(G, ring, degs, seed):
    rng = np.random.default_rng(seed)
    f, g = (Cochain.random("group", G, d, ring, rng) for d in degs)
    assert S_map(cup(f, g)).equals(star(S_map(f), S_map(g)))
