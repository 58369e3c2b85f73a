"""Command-line front end.

Every subcommand writes one JSON report (schema 1). Exit status: 0 when all
checks pass, 1 when an identity fails (the report carries a counterexample),
2 on malformed input.
"""
import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from rackdend import acceptance
from rackdend.cochain import TAGS, cohomology, pointed_cohomology
from rackdend.combinatorics import ShuffleClass, shuffles
from rackdend.cubical import ENUM_GUARD, nerve_oracle
from rackdend.linalg import is_prime
from rackdend.morphism import S_GUARD, check_algebra_morphism, injectivity_report, verify_chain_map
from rackdend.products import check_dendriform, check_leibniz, check_star_associative
from rackdend.rings import parse_ring
from rackdend.structures import AxiomError, FiniteGroup, StructureError, load_structure

SCHEMA = 1
EXHAUSTIVE_LIMIT = 1 << 12


class InputError(Exception):
    def __init__(self, msg, position=None):
        super().__init__(msg)
        self.position = position


def max_workers():
    """Worker cap from RACKDEND_MAX_WORKERS (default 1: sequential)."""
    raw = os.environ.get("RACKDEND_MAX_WORKERS", "1")
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"RACKDEND_MAX_WORKERS must be an integer, got {raw!r}") from None
    return max(1, n)


def _load(spec, want_group):
    try:
        s = load_structure(spec)
    except FileNotFoundError:
        raise InputError(f"no such file: {spec}") from None
    except KeyError as e:
        raise InputError(str(e.args[0])) from None
    except StructureError as e:
        raise InputError(str(e), e.position) from None
    except AxiomError as e:
        raise InputError(f"axiom violated: {e}", list(e.report.witness or [])) from None
    if want_group and not isinstance(s, FiniteGroup):
        raise InputError(f"{spec} is not a group")
    if not want_group and isinstance(s, FiniteGroup):
        raise InputError(f"{spec} is a group; pass it with --group")
    return s


def _ring(text):
    try:
        return parse_ring(text)
    except ValueError as e:
        raise InputError(str(e)) from None


def _need(cond, msg):
    if not cond:
        raise InputError(msg)


def _name(s, spec):
    return s.name or str(spec)


# subcommands

def cmd_cohomology(a):
    _need((a.structure is None) != (a.group is None), "give exactly one of --structure or --group")
    spec = a.structure or a.group
    s = _load(spec, a.group is not None)
    tag = a.complex or ("group" if a.group else "rack")
    _need(tag in TAGS + ("pointed-rack",), f"unknown complex {tag!r}")
    _need((tag in ("group", "cubical-group")) == (a.group is not None),
          f"complex {tag} needs {'--group' if tag in ('group', 'cubical-group') else '--structure'}")
    ring = _ring(a.coeff)
    _need(ring.snf_amenable, "cohomology needs Z or Z/m coefficients")
    lo = a.degree if a.degree is not None else (1 if tag == "pointed-rack" else 0)
    hi = a.degree if a.degree is not None else (a.max_degree if a.max_degree is not None else lo + 2)
    _need(0 <= lo <= hi <= 6, "degrees must satisfy 0 ≤ degree ≤ 6")
    _need(s.size ** (hi + 1) <= 1 << 16, f"|X|^(n+1) = {s.size ** (hi + 1)} exceeds 65536")
    results = []
    for n in range(lo, hi + 1):
        if tag == "pointed-rack":
            _need(s.unit is not None, "the rack has no unit; add \"unit\" to the JSON")
            _need(n >= 1, "pointed cohomology starts in degree 1")
            inv = pointed_cohomology(s, n, ring.descriptor())
        else:
            inv = cohomology(tag, s, n, ring.descriptor())
        results.append({"degree": n, **inv.as_dict(), "group": str(inv)})
    rep = {"schema": SCHEMA, "command": "cohomology", "structure": _name(s, spec), "complex": tag,
           "coeff": ring.descriptor(), "results": results, "pass": True}
    if len(results) == 1:
        rep.update(betti=results[0]["betti"], torsion=results[0]["torsion"])
    return rep


def cmd_products(a):
    _need(a.structure is not None, "--structure is required")
    X = _load(a.structure, False)
    ring = _ring(a.coeff)
    top = a.max_degree if a.max_degree is not None else 3
    _need(0 <= top <= 6, "--max-degree must be in 0..6")
    rng = np.random.default_rng(a.seed)
    exhaustive = X.size ** top <= EXHAUSTIVE_LIMIT
    pairs = [(p, q) for p in range(top + 1) for q in range(top + 1) if p + q <= top]
    reports = check_dendriform(X, ring, top, a.trials, rng, exhaustive)
    reports.append(check_star_associative(X, ring, top, a.trials, rng, exhaustive))
    reports += check_leibniz(X, ring, [d for d in pairs if sum(d) < top] or [(0, 0)], a.trials, rng, exhaustive)
    out = [r.as_dict() for r in reports]
    return {"schema": SCHEMA, "command": "products-check", "structure": _name(X, a.structure),
            "coeff": ring.descriptor(), "max_degree": top, "trials": a.trials, "seed": a.seed,
            "exhaustive_basis": exhaustive, "reports": out, "pass": all(r["pass"] for r in out)}


def cmd_morphism(a):
    _need(a.group is not None, "--group is required")
    G = _load(a.group, True)
    ring = _ring(a.coeff)
    _need(ring.k == 0, "morphism-check takes Z or Z/p coefficients")
    top = a.max_degree if a.max_degree is not None else 2
    _need(0 <= top <= S_GUARD - 1, f"--max-degree must be in 0..{S_GUARD - 1}")
    _need(G.size ** (top + 1) <= 1 << 14, f"|G|^(d+1) = {G.size ** (top + 1)} exceeds 16384")
    rep = verify_chain_map(G, top)
    pairs = [(p, q) for p in range(top + 1) for q in range(top + 1) if p + q <= top]
    alg = check_algebra_morphism(G, pairs, ring, a.trials, np.random.default_rng(a.seed))
    rep.algebra_morphism = alg.passed
    rep.details.append(alg.as_dict())
    if ring.modulus:
        _need(is_prime(ring.modulus), "induced maps are computed over prime fields; use Z/p with p prime")
        rep.injectivity = injectivity_report(G, ring.modulus)
    rep.group = _name(G, a.group)
    return {"schema": SCHEMA, "command": "morphism-check", "coeff": ring.descriptor(), "seed": a.seed,
            **rep.as_dict()}


def cmd_nerve(a):
    _need(a.structure is not None, "--structure is required")
    X = _load(a.structure, False)
    top = a.max_degree if a.max_degree is not None else 3
    _need(0 <= top <= 4, "--max-degree must be in 0..4")
    checks = []
    for n in range(top + 1):
        try:
            r = nerve_oracle(X, n)
        except ValueError as e:
            raise InputError(f"{e}; lower --max-degree") from None
        r["pass"] = r["bijection"] and r["faces"] and r["labelings"] == r["expected"]
        checks.append(r)
    return {"schema": SCHEMA, "command": "nerve-check", "structure": _name(X, a.structure),
            "guard": ENUM_GUARD, "checks": checks, "pass": all(c["pass"] for c in checks)}


def cmd_shuffle(a):
    _need(a.p1 is not None and a.p2 is not None, "--p1 and --p2 are required")
    _need(0 <= a.p1 and 0 <= a.p2 and a.p1 + a.p2 <= 10, "need p1, p2 ≥ 0 and p1 + p2 ≤ 10")
    cls = ShuffleClass(a.shuffle_class)
    items = [{"images": list(s.images), "sign": s.sign} for s in shuffles(a.p1, a.p2, cls)]
    return {"schema": SCHEMA, "command": "shuffle", "p1": a.p1, "p2": a.p2, "class": cls.value,
            "count": len(items), "shuffles": items, "pass": True}


def _criterion(args):
    number, seed = args
    return acceptance.CRITERIA[number](seed)


def _suite(seed, which, workers):
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            results = list(ex.map(_criterion, [(c, seed) for c in which]))
    else:
        results = [_criterion((c, seed)) for c in which]
    return {"schema": SCHEMA, "seed": int(seed), "criteria": results, "pass": all(r["pass"] for r in results)}


def cmd_verify(a):
    which = sorted(acceptance.CRITERIA)
    workers = max_workers()
    first = _suite(a.seed, which, workers)
    second = _suite(a.seed, which, workers)
    same = acceptance.dumps(first) == acceptance.dumps(second)
    first["criteria"].append({"criterion": 10, "title": "two runs with the same seed give byte-identical reports",
                              "pass": same, "checks": [{"identical": same, "pass": same}]})
    first["pass"] = first["pass"] and same
    return {"command": "verify-paper", **first}


COMMANDS = {"cohomology": cmd_cohomology, "products-check": cmd_products, "morphism-check": cmd_morphism,
            "nerve-check": cmd_nerve, "shuffle": cmd_shuffle, "verify-paper": cmd_verify}


# rendering

def render_text(rep):
    cmd = rep.get("command")
    lines = [f"{cmd}: {'PASS' if rep.get('pass') else 'FAIL'}"]
    if cmd == "cohomology":
        for r in rep["results"]:
            lines.append(f"  H^{r['degree']}({rep['structure']}; {rep['coeff']}) = {r['group']}")
    elif cmd == "shuffle":
        for s in rep["shuffles"]:
            lines.append(f"  {'+' if s['sign'] > 0 else '-'} {' '.join(map(str, s['images']))}")
        lines.append(f"  {rep['count']} shuffles")
    elif cmd == "verify-paper":
        for c in rep["criteria"]:
            lines.append(f"  {'PASS' if c['pass'] else 'FAIL'} {c['criterion']:>2}. {c['title']}")
    elif cmd == "products-check":
        for r in rep["reports"]:
            lines.append(f"  {'PASS' if r['pass'] else 'FAIL'} {r['identity']}")
    elif cmd == "nerve-check":
        for c in rep["checks"]:
            lines.append(f"  {'PASS' if c['pass'] else 'FAIL'} n={c['n']}: {c['labelings']} trunk maps, "
                         f"expected {c['expected']}")
    elif cmd == "morphism-check":
        lines.append(f"  chain map: {rep['chain_map']}")
        lines.append(f"  algebra morphism: {rep['algebra_morphism']}")
        if rep.get("injectivity"):
            i = rep["injectivity"]
            lines.append(f"  H1 over Z/{i['p']}: dim group {i['dim_H1_group']}, dim rack {i['dim_HR1_rack']}, "
                         f"rank {i['rank_S1']}, injective {i['injective']}")
    return "\n".join(lines) + "\n"


def build_parser():
    p = argparse.ArgumentParser(prog="rackdend", description="Rack and group cochain complexes, "
                                "dendriform products and the morphism S.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--structure", help="rack/shelf JSON file or fixture:NAME")
        sp.add_argument("--group", help="group JSON file or fixture:NAME")
        sp.add_argument("--coeff", default="Z", help="Z, Z/m or matK/Zm")
        sp.add_argument("--degree", type=int)
        sp.add_argument("--max-degree", type=int)
        sp.add_argument("--trials", type=int, default=0)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--out", help="write the report here instead of stdout")
        sp.add_argument("--format", choices=("json", "text"), default="json")

    for name in COMMANDS:
        sp = sub.add_parser(name)
        common(sp)
        if name == "cohomology":
            sp.add_argument("--complex", choices=TAGS + ("pointed-rack",))
        if name == "shuffle":
            sp.add_argument("--p1", type=int)
            sp.add_argument("--p2", type=int)
            sp.add_argument("--class", dest="shuffle_class", default="all",
                            choices=[c.value for c in ShuffleClass])
    return p


def main(argv=None):
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as e:
        return 2 if e.code else 0
    try:
        _need(a.trials >= 0, "--trials must be nonnegative")
        rep = COMMANDS[a.command](a)
    except InputError as e:
        err = {"schema": SCHEMA, "command": a.command, "error": str(e),
               "position": None if e.position is None else list(e.position)}
        sys.stderr.write(json.dumps(err, ensure_ascii=False) + "\n")
        return 2
    text = render_text(rep) if a.format == "text" else acceptance.dumps(rep)
    if a.out:
        with open(a.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0 if rep.get("pass") else 1


if __name__ == "__main__":
    sys.exit(main())
