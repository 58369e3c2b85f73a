import itertools
from math import comb

import pytest

from rackdend import identities
from rackdend.combinatorics import (Permutation, ShuffleClass, all_permutations, alpha, alpha_inverse, beta,
                                    consecutive_cycle, is_shuffle, kappa, nu, phi, psi, shuffle_class_of,
                                    shuffle_count, shuffles, sign, star, triple_shuffles, xi)
from oracles import inversions_sign

P = Permutation


def test_sign_examples():
    assert sign(P.identity(4)) == 1
    assert sign(P((2, 1))) == -1
    assert sign(P((2, 3, 1))) == 1


def test_sign_matches_inversion_count():
    for n in range(6):
        for s in all_permutations(n):
            assert s.sign == inversions_sign(s.images)


def test_permutation_validation_and_algebra():
    with pytest.raises(ValueError):
        P((1, 1, 2))
    with pytest.raises(ValueError):
        P((0, 1))
    s, g = P((2, 3, 1)), P((1, 3, 2))
    assert (s * g)(2) == s(g(2))
    assert s * s.inverse() == P.identity(3)
    assert P.cycle(4, 1, 3) == P((3, 2, 1, 4))


def test_consecutive_cycle():
    c = consecutive_cycle(4, 4, 2)       # (4 3 2): 4->3->2->4
    assert c.images == (1, 4, 2, 3)
    c = consecutive_cycle(4, 2, 4)       # (2 3 4)
    assert c.images == (1, 3, 4, 2)
    assert consecutive_cycle(3, 2, 2).is_identity()
    assert consecutive_cycle(4, 3, 1).sign == 1


def test_star_examples():
    assert star(P.identity(2), P.identity(3)) == P.identity(5)
    assert star(P((2, 1)), P.identity(1)) == P((2, 1, 3))


def test_shuffle_examples():
    assert len(shuffles(2, 2)) == 6
    assert len(shuffles(2, 2, ShuffleClass.LEFT_MAX)) == 3
    assert shuffles(1, 0) == [P.identity(1)]
    assert shuffles(0, 0) == [P.identity(0)]


@pytest.mark.parametrize("p1,p2", [(p, q) for p in range(5) for q in range(5)])
def test_shuffles_are_exactly_the_class(p1, p2):
    n = p1 + p2
    brute = sorted(s for s in all_permutations(n) if is_shuffle(s, p1, p2))
    assert sorted(shuffles(p1, p2)) == brute
    for s in shuffles(p1, p2):
        assert s.sign == inversions_sign(s.images)
    tf, lm = shuffles(p1, p2, ShuffleClass.TOP_FIXED), shuffles(p1, p2, ShuffleClass.LEFT_MAX)
    assert sorted(tf + lm) == brute and not set(tf) & set(lm)
    if p1 and p2:
        assert len(tf) == comb(n - 1, p1) and len(lm) == comb(n - 1, p1 - 1)
        assert all(s(n) == n for s in tf) and all(s(p1) == n for s in lm)
    for cls in ShuffleClass:
        assert shuffle_count(p1, p2, cls) == len(shuffles(p1, p2, cls))


def test_degree_zero_convention():
    assert shuffle_class_of(P.identity(2), 2, 0) is ShuffleClass.LEFT_MAX
    assert shuffle_class_of(P.identity(2), 0, 2) is ShuffleClass.TOP_FIXED
    assert shuffle_class_of(P.identity(0), 0, 0) is ShuffleClass.TOP_FIXED


def test_triple_shuffles_brute():
    for p in itertools.product(range(3), repeat=3):
        n = sum(p)
        assert sorted(triple_shuffles(*p)) == sorted(s for s in all_permutations(n) if is_shuffle(s, *p))


def test_alpha_beta_examples_and_errors():
    assert alpha(P.identity(3), P.identity(2), 1, 1, 1) == P.identity(3)
    assert beta(P.identity(3), P.identity(2), 1, 1, 1) == P.identity(3)
    imgs = {alpha(s, g, 1, 1, 1) for s in shuffles(1, 2) for g in shuffles(1, 1)}
    assert imgs == set(all_permutations(3))
    with pytest.raises(ValueError):
        alpha(P((2, 3, 1)), P.identity(2), 1, 1, 1)
    t = P((2, 1, 3))
    s, g = alpha_inverse(t, 1, 1, 1)
    assert alpha(s, g, 1, 1, 1) == t


def test_phi_psi_examples():
    for i in range(1, 5):
        assert phi(P.identity(4), i) == P.identity(3)
    s = P((3, 1, 4, 2))
    f, j = psi(s, 2)
    assert j == s(2) and f == phi(s, 2)
    with pytest.raises(ValueError):
        phi(s, 5)


def test_nu_xi_kappa_examples():
    assert nu(P.identity(2), 1) == P.identity(3)
    assert xi(P.identity(2), 3) == P.identity(3)
    s = P((2, 3, 1))
    t, i = kappa(s, 1)
    assert t.sign == -s.sign and i == 1
    with pytest.raises(ValueError):
        nu(P.identity(2), 4)
    with pytest.raises(ValueError):
        kappa(s, 3)


def test_identity_suite_passes():
    for check in (identities.shuffle_cardinalities(6), identities.star_sign(3), identities.alpha_beta(2, 2),
                  identities.phi_identities(3, 4), identities.nu_xi_kappa(3)):
        assert check["pass"], check
        assert check["cases"] > 0


def test_identity_checker_catches_wrong_map(monkeypatch):
    # ν without the cycle is not a valid change of variables
    monkeypatch.setattr(identities, "nu", lambda s, i: star(P.identity(1), s))
    r = identities.nu_xi_kappa(2)
    assert not r["pass"] and r["counterexample"]["map"] == "nu"
