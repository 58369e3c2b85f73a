import numpy as np
import pytest

from rackdend import morphism
from rackdend.cochain import Cochain, cohomology
from rackdend.morphism import (S_map, S_matrix, check_algebra_morphism, composite_S_check, composite_S_matrix,
                               functor_roundtrip, induced_H1, injectivity_report, morphism_report,
                               sigma_chain_map_full_nerve, verify_chain_map)
from rackdend.rings import Integers, IntegersMod, MatrixRing
from rackdend.structures import conj_rack, group_fixture, rack_fixture
import oracles


def test_S_degree_one_is_identity(S3, rng):
    f = Cochain.random("group", S3, 1, Integers(), rng)
    assert np.array_equal(S_map(f).values, f.values)


def test_S_degree_two_formula(S3, rng):
    X = conj_rack(S3)
    f = Cochain.random("group", S3, 2, Integers(), rng)
    g = S_map(f)
    for a in range(6):
        for b in range(6):
            assert g(a, b) == f(a, b) - f(int(X.table[a, b]), a)


def test_S_abelian_antisymmetrizes(rng):
    G = group_fixture("Z4")
    f = Cochain.random("group", G, 2, Integers(), rng)
    g = S_map(f)
    assert all(g(a, b) == f(a, b) - f(b, a) for a in range(4) for b in range(4))


@pytest.mark.parametrize("name,n", [("S3", 1), ("S3", 2), ("S3", 3), ("Z2xZ2", 3), ("Z3", 3)])
@pytest.mark.parametrize("ring", [Integers(), IntegersMod(5), MatrixRing(2)], ids=str)
def test_S_matches_oracle(name, n, ring, rng):
    G = group_fixture(name)
    X = conj_rack(G)
    f = Cochain.random("group", G, n, ring, rng)
    zero = np.zeros(ring.shape, dtype=np.int64) if ring.k else 0
    want = oracles.S(X.table, oracles.as_dict(f), n, G.size, zero)
    got = oracles.as_dict(S_map(f))
    assert all(ring.equal(np.asarray(got[x]), np.asarray(want[x])) for x in want)


def test_S_guards(S3):
    with pytest.raises(ValueError):
        S_map(Cochain.zero("rack", rack_fixture("R3"), 1))
    with pytest.raises(ValueError):
        S_map(Cochain.zero("group", group_fixture("trivial"), morphism.S_GUARD + 1))


@pytest.mark.parametrize("name", ["trivial", "Z2", "Z3", "Z2xZ2"])
def test_chain_map(name):
    rep = verify_chain_map(group_fixture(name), 3)
    assert rep.chain_map and rep.passed and [d["n"] for d in rep.details] == [0, 1, 2]


def test_chain_map_S3():
    assert verify_chain_map(group_fixture("S3"), 2).chain_map


def test_chain_map_negative_control(monkeypatch):
    G = group_fixture("Z3")
    real = morphism.S_matrix

    def broken(G, n):
        M = real(G, n).copy()
        if n == 2:
            M[0, 1] += 1
        return M
    monkeypatch.setattr(morphism, "S_matrix", broken)
    rep = verify_chain_map(G, 2)
    assert not rep.chain_map and not rep.passed
    bad = [d for d in rep.details if not d["equal"]]
    assert bad and set(bad[0]["first_mismatch"]) == {"row_tuple", "basis_tuple", "lhs", "rhs"}


def test_algebra_morphism_exhaustive():
    G = group_fixture("Z3")
    assert check_algebra_morphism(G, ((1, 1), (1, 2), (2, 1), (0, 2))).passed


def test_algebra_morphism_random(S3):
    r = check_algebra_morphism(S3, ((1, 2),), MatrixRing(2, 3), 20, np.random.default_rng(3), exhaustive=False)
    assert r.passed
    r = check_algebra_morphism(S3, ((1, 1),), None, 10, np.random.default_rng(4), exhaustive=False)
    assert r.passed


def test_S_of_coboundary_is_coboundary(S3, rng):
    from rackdend.cochain import differential
    f = Cochain.random("group", S3, 1, Integers(), rng)
    assert S_map(differential(f)).equals(differential(S_map(f)))


@pytest.mark.parametrize("name,p,want", [("Z2", 2, (1, 2, 1)), ("S3", 2, (1, 3, 1)), ("Z3", 2, (0, 3, 0)),
                                          ("Z3", 3, (1, 3, 1)), ("S3", 3, (0, 3, 0))])
def test_induced_H1(name, p, want):
    assert induced_H1(group_fixture(name), p) == want


def test_HR1_dimension_matches_integral_cohomology():
    # HR¹ is free, so its F_p dimension equals the Betti number
    for name in ("Z2", "Z3", "S3"):
        G = group_fixture(name)
        betti = cohomology("rack", conj_rack(G), 1).betti
        assert all(induced_H1(G, p)[1] == betti for p in (2, 3, 5))


def test_injectivity_report_keys(S3):
    r = injectivity_report(S3, 2)
    assert r == {"p": 2, "dim_H1_group": 1, "dim_HR1_rack": 3, "rank_S1": 1, "injective": True}


@pytest.mark.parametrize("name,n", [("trivial", 2), ("Z2", 0), ("Z2", 1), ("Z2", 2), ("Z3", 2), ("Z2xZ2", 2),
                                    ("S3", 1), ("S3", 2)])
def test_composite_definition(name, n):
    G = group_fixture(name)
    assert composite_S_check(G, n)
    assert composite_S_matrix(G, n).shape == (G.size ** n,) * 2


def test_composite_guard():
    with pytest.raises(ValueError):
        composite_S_matrix(group_fixture("Z2"), 3)
    with pytest.raises(ValueError):
        composite_S_matrix(group_fixture("Z3"), 3)


@pytest.mark.parametrize("name", ["Z2", "Z3", "S3"])
def test_sigma_full_nerve(name):
    G = group_fixture(name)
    for n in (0, 1):
        assert sigma_chain_map_full_nerve(G, n)


def test_functor_roundtrip(S3, rng):
    for _ in range(10):
        gens = [int(v) for v in rng.integers(0, 6, 3)]
        assert functor_roundtrip(S3, gens)


def test_morphism_report(S3):
    rep = morphism_report(S3, 2)
    d = rep.as_dict()
    assert d["pass"] and d["chain_map"] and d["algebra_morphism"] and d["injectivity"]["injective"]
