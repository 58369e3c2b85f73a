import numpy as np
import pytest
import sympy
from hypothesis import given, settings, strategies as st
from sympy.matrices.normalforms import smith_normal_form

from rackdend.linalg import (AbelianInvariants, cohomology_invariants, elementary_divisors, is_prime,
                             nullspace_mod_p, rank_mod_p, snf)


def _check_snf(M):
    r = snf(M)
    A = np.asarray(M, dtype=object)
    assert (r.U.dot(A).dot(r.V) == r.D).all()
    assert abs(sympy.Matrix(r.U.tolist()).det()) == 1
    assert abs(sympy.Matrix(r.V.tolist()).det()) == 1
    d = r.diagonal
    off = r.D.copy()
    for i in range(len(d)):
        off[i, i] = 0
    assert not off.any()
    nz = [x for x in d if x]
    assert all(x > 0 for x in nz)
    assert all(b % a == 0 for a, b in zip(nz, nz[1:]))
    assert d[len(nz):] == [0] * (len(d) - len(nz))
    return nz


def _sympy_divisors(M):
    if min(np.shape(M)) == 0:
        return []
    D = smith_normal_form(sympy.Matrix(np.asarray(M).tolist()), domain=sympy.ZZ)
    return sorted(abs(int(D[i, i])) for i in range(min(D.shape)) if D[i, i] != 0)


@pytest.mark.parametrize("M, want", [
    ([[2, 4], [6, 8]], [2, 4]),
    ([[2, 0], [0, 3]], [1, 6]),
    ([[0, 0], [0, 0]], []),
    ([[6]], [6]),
    ([[1, 2, 3], [4, 5, 6], [7, 8, 9]], [1, 3]),
])
def test_elementary_divisors_examples(M, want):
    assert elementary_divisors(M) == want
    assert _check_snf(M) == want


def test_snf_against_sympy(rng):
    for _ in range(60):
        r, c = rng.integers(1, 7, size=2)
        M = rng.integers(-9, 10, size=(r, c))
        if rng.random() < 0.3:
            M[:, 0] = 0
        assert _check_snf(M) == _sympy_divisors(M)


def test_snf_empty_shapes():
    assert elementary_divisors(np.zeros((0, 3), dtype=np.int64)) == []
    assert elementary_divisors(np.zeros((3, 0), dtype=np.int64)) == []


def test_snf_large_entries_exact():
    M = [[2**70, 3], [5, 2**65 + 1]]
    _check_snf(M)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.lists(st.integers(-20, 20), min_size=3, max_size=3), min_size=1, max_size=5))
def test_snf_property(rows):
    assert _check_snf(rows) == _sympy_divisors(rows)


def test_cohomology_invariants_integral():
    # 0 -> Z --2--> Z -> 0: H^1 = Z/2 in the upper spot
    d_in = np.array([[2]])
    d_out = np.zeros((0, 1), dtype=np.int64)
    assert cohomology_invariants(d_out, d_in).as_dict() == {"betti": 0, "torsion": [2]}
    assert cohomology_invariants(d_out, d_in, modulus=4).as_dict() == {"betti": 0, "torsion": [2]}
    assert cohomology_invariants(d_out, d_in, modulus=3).as_dict() == {"betti": 0, "torsion": []}
    # kernel of [1 1] is Z, nothing in: H = Z
    assert cohomology_invariants(np.array([[1, 1]]), np.zeros((2, 0))).as_dict() == {"betti": 1, "torsion": []}


def test_cohomology_invariants_mod_m_general():
    # Z/4 coefficients on 0 -> Z -> (x2) Z: ker of mult by 2 on Z/4 is Z/2
    assert cohomology_invariants(np.array([[2]]), np.zeros((1, 0)), modulus=4).as_dict() == \
        {"betti": 0, "torsion": [2]}
    assert cohomology_invariants(np.zeros((1, 2)), np.zeros((2, 0)), modulus=6).as_dict() == \
        {"betti": 0, "torsion": [6, 6]}


def test_cohomology_invariants_rejects_non_complex():
    with pytest.raises(ValueError):
        cohomology_invariants(np.array([[1]]), np.array([[1]]))


def _gf_rank(M, p):
    from sympy.polys.domains import GF
    from sympy.polys.matrices import DomainMatrix
    K = GF(p)
    return DomainMatrix([[K(int(v)) for v in row] for row in M.tolist()], M.shape, K).rank()


def test_prime_field_helpers(rng):
    assert [p for p in range(20) if is_prime(p)] == [2, 3, 5, 7, 11, 13, 17, 19]
    with pytest.raises(ValueError):
        rank_mod_p(np.eye(2, dtype=np.int64), 4)
    for p in (2, 3, 5):
        for _ in range(20):
            M = rng.integers(0, p, size=(rng.integers(1, 6), rng.integers(1, 6)))
            r = rank_mod_p(M, p)
            assert r == _gf_rank(M, p) == rank_mod_p(M.T, p)
            N = nullspace_mod_p(M, p)
            assert N.shape == (M.shape[1], M.shape[1] - r)
            assert not ((M @ N) % p).any()
            assert rank_mod_p(N, p) == N.shape[1]


def test_abelian_invariants_rendering():
    assert str(AbelianInvariants(3)) == "Z^3"
    assert str(AbelianInvariants(0, (2, 2))) == "Z/2 + Z/2"
    assert str(AbelianInvariants(0)) == "0"
    assert str(AbelianInvariants(1, (4,))) == "Z + Z/4"
    with pytest.raises(ValueError):
        AbelianInvariants(0, (1,))
    with pytest.raises(ValueError):
        AbelianInvariants(0, (2, 3))
