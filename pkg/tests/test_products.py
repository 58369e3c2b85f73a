import numpy as np
import pytest

from rackdend import products
from rackdend.cochain import Cochain
from rackdend.combinatorics import ShuffleClass
from rackdend.products import (check_cup_associative, check_cup_leibniz, check_dendriform, check_leibniz,
                               check_star_associative, cup, prec, prec_cubical, shuffle_class_counts, star,
                               succ, succ_cubical)
from rackdend.rings import Integers, IntegersMod, MatrixRing
from rackdend.structures import group_fixture, rack_fixture, trivial_rack
import oracles


def _zero(ring):
    return np.zeros(ring.shape, dtype=np.int64) if ring.k else 0


def _mul(ring):
    return (lambda a, b: a.dot(b)) if ring.k else (lambda a, b: a * b)


@pytest.mark.parametrize("ring", [Integers(), IntegersMod(7), MatrixRing(2)], ids=str)
@pytest.mark.parametrize("name", ["R3", "ConjS3"])
def test_products_match_formula(name, ring, rng):
    X = rack_fixture(name)
    for p1, p2 in [(0, 1), (1, 0), (0, 0), (1, 1), (1, 2), (2, 1), (2, 2) if X.size == 3 else (0, 2)]:
        f1 = Cochain.random("rack", X, p1, ring, rng)
        f2 = Cochain.random("rack", X, p2, ring, rng)
        for which, op in (("succ", succ), ("prec", prec)):
            want = oracles.dendri(X.table, oracles.as_dict(f1), oracles.as_dict(f2), p1, p2, X.size, which,
                                  _mul(ring), _zero(ring))
            got = op(f1, f2)
            vals = np.array([want[x] for x in oracles.tuples(X.size, p1 + p2)], dtype=object)
            assert ring.equal(got.values, vals.reshape(got.values.shape)), (which, p1, p2)


def test_bidegree_one_examples(R3, rng):
    f1 = Cochain.random("rack", R3, 1, Integers(), rng)
    f2 = Cochain.random("rack", R3, 1, Integers(), rng)
    s, p, st = succ(f1, f2), prec(f1, f2), star(f1, f2)
    for x in range(3):
        for y in range(3):
            assert s(x, y) == f1(x) * f2(y)
            assert p(x, y) == -f1(int(R3.table[x, y])) * f2(x)
            assert st(x, y) == s(x, y) + p(x, y)


def test_point_rack_star_vanishes_in_bidegree_one():
    X = trivial_rack(1)
    f = Cochain.from_function("rack", X, 1, lambda x: 5)
    assert star(f, f).is_zero()


def test_degree_zero_convention(R3, rng):
    f = Cochain.random("rack", R3, 2, Integers(), rng)
    c = Cochain.from_function("rack", R3, 0, lambda: 3)
    assert prec(f, c).equals(f.scaled(3))
    assert succ(c, f).equals(f.scaled(3))
    assert succ(f, c).is_zero() and prec(c, f).is_zero()
    assert star(c, f).equals(f.scaled(3)) and star(f, c).equals(f.scaled(3))


def test_cup_examples(S3, rng):
    f = Cochain.random("group", S3, 1, Integers(), rng)
    g = Cochain.random("group", S3, 2, Integers(), rng)
    h = cup(f, g)
    assert all(h(a, b, c) == f(a) * g(b, c) for a in range(6) for b in range(6) for c in range(6))
    one = Cochain.from_function("group", S3, 0, lambda: 2)
    assert cup(one, g).equals(g.scaled(2))


def test_mismatch_errors(R3, S3):
    f = Cochain.zero("rack", R3, 1)
    g = Cochain.zero("rack", rack_fixture("R3"), 1)
    with pytest.raises(ValueError):
        succ(f, g)
    with pytest.raises(ValueError):
        succ(f, Cochain.zero("rack", R3, 1, IntegersMod(3)))
    with pytest.raises(ValueError):
        cup(f, f)


def test_shuffle_class_counts_pascal():
    for p1 in range(1, 5):
        for p2 in range(1, 5):
            a, b, c = shuffle_class_counts(p1, p2)
            assert a + b == c


@pytest.mark.parametrize("name", ["T1", "ConjZ3", "R3"])
def test_dendriform_exhaustive(name):
    reps = check_dendriform(rack_fixture(name), max_degree=4)
    assert all(r.passed and r.counterexample is None for r in reps)


def test_dendriform_random_matrix_ring(ConjS3):
    reps = check_dendriform(ConjS3, MatrixRing(2, 2), 3, 5, np.random.default_rng(0), exhaustive=False)
    assert all(r.passed for r in reps)


def test_dendriform_negative_control(R3):
    def bad_prec(f1, f2):
        return prec(f1, f2).scaled(-1)
    reps = check_dendriform(R3, max_degree=3, prec_=bad_prec)
    # the middle axiom is invariant under negating ≺, the outer two are not
    assert [r.passed for r in reps] == [False, True, False]
    cex = reps[0].counterexample
    assert cex["kind"] == "basis" and cex["structure"]["table"] == R3.table.tolist()
    assert len(cex["point"]) == sum(cex["degrees"]) and cex["difference"] != 0
    reps = check_dendriform(R3, Integers(), 2, 3, np.random.default_rng(0), exhaustive=False, prec_=bad_prec)
    cex = reps[2].counterexample
    assert cex["kind"] == "random" and len(cex["cochains"]) == 3 and cex["lhs"] != cex["rhs"]


def test_leibniz(R3):
    reps = check_leibniz(R3, degrees=((1, 1), (1, 2), (2, 1), (2, 2)))
    assert all(r.passed for r in reps)
    reps = check_leibniz(R3, IntegersMod(5), ((2, 1),), 20, np.random.default_rng(1), exhaustive=False)
    assert all(r.passed for r in reps)


def test_leibniz_trivial_rack_vanishes():
    X = trivial_rack(2)
    f = Cochain.random("rack", X, 1, Integers(), np.random.default_rng(2))
    assert products.differential(succ(f, f)).is_zero()
    assert all(r.passed for r in check_leibniz(X, degrees=((1, 1),)))


def test_star_and_cup(S3, ConjS3):
    assert check_star_associative(rack_fixture("R3"), max_degree=4).passed
    assert check_star_associative(ConjS3, MatrixRing(2, 2), 2, 5, np.random.default_rng(0), exhaustive=False).passed
    assert check_cup_leibniz(S3, degrees=((1, 1), (1, 2), (2, 1), (0, 2))).passed
    assert check_cup_associative(S3, 3).passed


def test_cubical_side_agrees(R3, rng):
    for p1, p2 in [(1, 1), (1, 2), (2, 1)]:
        f1 = Cochain.random("rack", R3, p1, Integers(), rng)
        f2 = Cochain.random("rack", R3, p2, Integers(), rng)
        assert succ_cubical(f1, f2).equals(succ(f1, f2))
        assert prec_cubical(f1, f2).equals(prec(f1, f2))


def test_random_trials_default_to_integers(R3):
    reps = check_dendriform(R3, None, 2, 2, np.random.default_rng(0), exhaustive=False)
    assert all(r.passed for r in reps)
