"""The acceptance suite: one function per criterion, each returning a JSON-ready dict.

Reports contain no timings, so two runs with the same seed serialize to the
same bytes. Runtime bounds are enforced by the test-suite, not here.
"""
import json

import numpy as np

from rackdend.cochain import cohomology, dd_is_zero, pointed_dd_is_zero
from rackdend.cubical import nerve_oracle
from rackdend.identities import combinatorial_suite
from rackdend.morphism import (check_algebra_morphism, composite_S_check, injectivity_report,
                               sigma_chain_map_full_nerve, verify_chain_map)
from rackdend.products import (check_cup_associative, check_cup_leibniz, check_dendriform, check_leibniz,
                               check_star_associative)
from rackdend.rings import Integers, MatrixRing
from rackdend.structures import (GROUP_FIXTURES, RACK_FIXTURES, group_fixture, rack_fixture,
                                 trivial_rack)

SCHEMA = 1
MAX_DEGREE = 3
RANDOM_TRIALS = 100
RUNTIME_BOUNDS = {1: 10, 2: 60, 3: 60, 4: 60, 5: 60, 6: 120, 8: 30}


def _rng(seed, criterion, salt=0):
    return np.random.default_rng([int(seed), criterion, salt])


def _racks(max_size=None):
    out = [(k, rack_fixture(k)) for k in RACK_FIXTURES]
    return [(k, X) for k, X in out if max_size is None or X.size <= max_size]


def _groups(max_size=None):
    out = [(k, group_fixture(k)) for k in GROUP_FIXTURES]
    return [(k, G) for k, G in out if max_size is None or G.size <= max_size]


def _verdict(number, title, checks):
    return {"criterion": number, "title": title, "pass": all(c["pass"] for c in checks), "checks": checks}


def complex_validity(seed=0):
    checks = []
    for name, X in _racks():
        for n in range(MAX_DEGREE + 1):
            checks.append({"complex": "rack", "fixture": name, "n": n, "pass": dd_is_zero("rack", X, n)})
            if X.unit is not None and n >= 1:
                checks.append({"complex": "pointed-rack", "fixture": name, "n": n,
                               "pass": pointed_dd_is_zero(X, n)})
    for name, G in _groups():
        for n in range(MAX_DEGREE + 1):
            checks.append({"complex": "group", "fixture": name, "n": n, "pass": dd_is_zero("group", G, n)})
            checks.append({"complex": "cubical-group", "fixture": name, "n": n,
                           "pass": dd_is_zero("cubical-group", G, n)})
    return _verdict(1, "d∘d = 0 on rack, pointed-rack, group and cubical-group complexes", checks)


def nerve_theorem(seed=0):
    checks = []
    for name, X in _racks(3):
        for n in range(MAX_DEGREE + 1):
            r = nerve_oracle(X, n)
            r["fixture"] = name
            r["pass"] = r["bijection"] and r["faces"] and r["labelings"] == r["expected"]
            checks.append(r)
    return _verdict(2, "trunk maps □_n → X are X^n via η, with the stated face formulas", checks)


def _reports(rs, **meta):
    out = []
    for r in rs:
        d = r.as_dict()
        d.update(meta)
        out.append(d)
    return out


def dendriform(seed=0):
    checks = []
    for name in ("ConjZ3", "R3"):
        checks += _reports(check_dendriform(rack_fixture(name), max_degree=4), fixture=name, mode="basis")
    X = rack_fixture("ConjS3")
    for k, ring in enumerate((Integers(), MatrixRing(2, 2))):
        checks += _reports(check_dendriform(X, ring, MAX_DEGREE, RANDOM_TRIALS, _rng(seed, 3, k), exhaustive=False),
                           fixture="ConjS3", mode="random", ring=ring.descriptor())
    return _verdict(3, "dendriform axioms", checks)


LEIBNIZ_DEGREES = ((1, 1), (1, 2), (2, 1), (2, 2))


def leibniz(seed=0):
    checks = []
    for name, X in _racks(3):
        checks += _reports(check_leibniz(X, degrees=LEIBNIZ_DEGREES), fixture=name, mode="basis")
    return _verdict(4, "graded Leibniz rule for ≻ and ≺", checks)


def star_and_cup(seed=0):
    checks = []
    for name in ("ConjZ3", "R3"):
        checks += _reports([check_star_associative(rack_fixture(name), max_degree=4)], fixture=name, mode="basis")
    X = rack_fixture("ConjS3")
    for k, ring in enumerate((Integers(), MatrixRing(2, 2))):
        r = check_star_associative(X, ring, MAX_DEGREE, RANDOM_TRIALS, _rng(seed, 5, k), exhaustive=False)
        checks += _reports([r], fixture="ConjS3", mode="random", ring=ring.descriptor())
    degs = [(p, q) for p in range(3) for q in range(3) if p + q <= 3]
    for name in ("Z3", "S3"):
        G = group_fixture(name)
        checks += _reports([check_cup_leibniz(G, degrees=degs), check_cup_associative(G, 4)], fixture=name,
                           mode="basis")
    G = group_fixture("S3")
    for k, ring in enumerate((Integers(), MatrixRing(2, 2))):
        r = check_cup_leibniz(G, ring, degs, RANDOM_TRIALS, _rng(seed, 5, 10 + k), exhaustive=False)
        checks += _reports([r], fixture="S3", mode="random", ring=ring.descriptor())
    return _verdict(5, "⋆-associativity and cup-product Leibniz rule", checks)


ALG_DEGREES = tuple((p, q) for p in range(4) for q in range(4) if p + q <= 3)


def morphism(seed=0):
    checks = []
    for name, G in _groups():
        top = 3 if G.size <= 4 else 2
        rep = verify_chain_map(G, top)
        checks.append({"check": "chain map", "fixture": name, "max_degree": top, "pass": rep.chain_map,
                       "squares": rep.details})
    for name, G in _groups(4):
        checks += _reports([check_algebra_morphism(G, ALG_DEGREES)], fixture=name, check="algebra morphism")
        for n in (0, 1, 2):
            checks.append({"check": "composite definition", "fixture": name, "n": n,
                           "pass": composite_S_check(G, n)})
        for n in (0, 1):
            checks.append({"check": "Σ chain map on the full cubical nerve", "fixture": name, "n": n,
                           "pass": sigma_chain_map_full_nerve(G, n)})
    G = group_fixture("S3")
    checks.append({"check": "composite definition", "fixture": "S3", "n": 2, "pass": composite_S_check(G, 2)})
    return _verdict(6, "S is a chain map and an algebra morphism, matching its composite definition", checks)


INJECTIVITY_GROUPS = ("Z2", "Z3", "Z4", "Z2xZ2", "S3")


def injectivity(seed=0):
    checks = []
    for name in INJECTIVITY_GROUPS:
        for p in (2, 3, 5):
            r = injectivity_report(group_fixture(name), p)
            r.update(fixture=name, **{"pass": r["injective"]})
            checks.append(r)
    r = injectivity_report(group_fixture("S3"), 2)
    want = {"dim_H1_group": 1, "dim_HR1_rack": 3, "rank_S1": 1}
    checks.append({"check": "S3 over Z/2", "expected": want,
                   "got": {k: r[k] for k in want}, "pass": all(r[k] == v for k, v in want.items())})
    return _verdict(7, "[S¹] is injective on H¹", checks)


def combinatorial(seed=0):
    return _verdict(8, "shuffles, α/β, φ/ψ, ν/ξ/κ and cubical identities", combinatorial_suite(rack_fixture("R3")))


def known_cohomology(seed=0):
    checks = []
    for k in range(1, 5):
        X = trivial_rack(k)
        for n in range(5):
            got = cohomology("rack", X, n).as_dict()
            want = {"betti": k ** n, "torsion": []}
            checks.append({"rack": f"trivial({k})", "n": n, "got": got, "expected": want, "pass": got == want})
    got = cohomology("rack", rack_fixture("ConjS3"), 1).as_dict()
    want = {"betti": 3, "torsion": []}
    checks.append({"rack": "ConjS3", "n": 1, "got": got, "expected": want, "pass": got == want})
    return _verdict(9, "known cohomology values", checks)


CRITERIA = {1: complex_validity, 2: nerve_theorem, 3: dendriform, 4: leibniz, 5: star_and_cup,
            6: morphism, 7: injectivity, 8: combinatorial, 9: known_cohomology}


def dumps(report):
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def run_suite(seed=0, criteria=None):
    """Criteria 1-9 as one report; criterion 10 is checked by the caller across two runs."""
    which = sorted(criteria or CRITERIA)
    results = [CRITERIA[c](seed) for c in which]
    return {"schema": SCHEMA, "seed": int(seed), "criteria": results, "pass": all(r["pass"] for r in results)}


def determinism(seed=0, criteria=None):
    """Criterion 10: two runs serialize to identical bytes."""
    a, b = dumps(run_suite(seed, criteria)), dumps(run_suite(seed, criteria))
    return {"criterion": 10, "title": "two runs with the same seed give byte-identical reports",
            "pass": a == b, "checks": [{"bytes": len(a), "identical": a == b, "pass": a == b}]}
