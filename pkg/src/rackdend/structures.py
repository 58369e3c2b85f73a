"""Finite shelves, racks, groups and rack-module actions given by tables.

Elements are 0-based indices. Tables are dense int64 arrays, read-only once
a structure is built.
"""
import itertools
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np


class StructureError(ValueError):
    """Malformed input (wrong dimensions, out-of-range entries)."""

    def __init__(self, msg, position=None):
        super().__init__(msg if position is None else f"{msg} at {position}")
        self.position = position


class AxiomError(ValueError):
    """A table that parses but violates an axiom."""

    def __init__(self, report):
        super().__init__(str(report))
        self.report = report


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    axiom: str = None
    witness: tuple = None

    def __str__(self):
        if self.ok:
            return "valid"
        return f"axiom '{self.axiom}' fails at {self.witness}"

    def as_dict(self):
        return {"ok": self.ok, "axiom": self.axiom,
                "witness": None if self.witness is None else list(self.witness)}


def _table(table, size=None, name="table"):
    try:
        rows = [list(r) for r in table]
    except TypeError:
        raise StructureError(f"{name} is not a list of rows") from None
    n = len(rows) if size is None else size
    if len(rows) != n:
        raise StructureError(f"{name} has {len(rows)} rows, expected {n}", (len(rows),))
    for i, r in enumerate(rows):
        if len(r) != n:
            raise StructureError(f"{name} row {i} has {len(r)} entries, expected {n}", (i,))
        for j, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, (int, np.integer)) or not 0 <= v < n:
                raise StructureError(f"{name} entry {v!r} not an element index", (i, j))
    t = np.array(rows, dtype=np.int64).reshape(n, n)
    t.setflags(write=False)
    return t


def _check_unit(u, n):
    if u is None:
        return None
    if isinstance(u, bool) or not isinstance(u, (int, np.integer)) or not 0 <= u < n:
        raise StructureError(f"unit {u!r} not an element index")
    return int(u)


@dataclass(frozen=True, eq=False)
class FiniteShelf:
    """Set {0..size-1} with x▷y = table[x, y]."""

    table: np.ndarray
    unit: int = None
    labels: tuple = None
    name: str = ""

    def __post_init__(self):
        t = _table(self.table)
        object.__setattr__(self, "table", t)
        object.__setattr__(self, "unit", _check_unit(self.unit, len(t)))
        if self.labels is not None:
            if len(self.labels) != len(t):
                raise StructureError(f"{len(self.labels)} labels for {len(t)} elements")
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        rep = validate(self, self._kind())
        if not rep.ok:
            raise AxiomError(rep)

    def _kind(self):
        return "pointed-shelf" if self.unit is not None else "shelf"

    @property
    def size(self):
        return self.table.shape[0]

    @property
    def pointed(self):
        return self.unit is not None

    def op(self, x, y):
        return int(self.table[x, y])

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def as_dict(self):
        d = {"schema": 1, "kind": "rack" if isinstance(self, FiniteRack) else "shelf",
             "size": self.size, "table": self.table.tolist()}
        if self.unit is not None:
            d["unit"] = self.unit
        if self.labels:
            d["labels"] = list(self.labels)
        if self.name:
            d["name"] = self.name
        return d


@dataclass(frozen=True, eq=False)
class FiniteRack(FiniteShelf):
    """Shelf whose left translations c_x = table[x] are bijections."""

    def _kind(self):
        return "pointed-rack" if self.unit is not None else "rack"

    def translation_inverse(self, x):
        """Inverse permutation of c_x as an index array."""
        inv = np.empty(self.size, dtype=np.int64)
        inv[self.table[x]] = np.arange(self.size)
        return inv


@dataclass(frozen=True, eq=False)
class FiniteGroup:
    mul: np.ndarray
    identity: int = None
    labels: tuple = None
    name: str = ""
    inv: np.ndarray = field(default=None, repr=False)

    def __post_init__(self):
        t = _table(self.mul, name="mul")
        n = len(t)
        object.__setattr__(self, "mul", t)
        e = self.identity
        if e is None:
            cands = [x for x in range(n) if (t[x] == np.arange(n)).all()]
            if not cands:
                raise AxiomError(ValidationReport(False, "left identity", ()))
            e = cands[0]
        object.__setattr__(self, "identity", _check_unit(e, n))
        if self.labels is not None:
            if len(self.labels) != n:
                raise StructureError(f"{len(self.labels)} labels for {n} elements")
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        rep = validate(self, "group")
        if not rep.ok:
            raise AxiomError(rep)
        inv = np.array([int(np.nonzero(t[x] == self.identity)[0][0]) for x in range(n)], dtype=np.int64)
        inv.setflags(write=False)
        object.__setattr__(self, "inv", inv)

    @property
    def size(self):
        return self.mul.shape[0]

    def label(self, x):
        return self.labels[x] if self.labels else str(x)

    def product(self, xs):
        acc = self.identity
        for x in xs:
            acc = int(self.mul[acc, x])
        return acc

    def is_abelian(self):
        return bool((self.mul == self.mul.T).all())

    def as_dict(self):
        d = {"schema": 1, "kind": "group", "size": self.size, "table": self.mul.tolist(),
             "unit": self.identity}
        if self.labels:
            d["labels"] = list(self.labels)
        if self.name:
            d["name"] = self.name
        return d


@dataclass(frozen=True, eq=False)
class RackModuleAction:
    """x·a = matrices[x] @ a on Z^k (modulus 0) or (Z/m)^k."""

    rack: FiniteRack
    matrices: np.ndarray
    modulus: int = 0

    def __post_init__(self):
        A = np.asarray(self.matrices, dtype=np.int64)
        if A.ndim != 3 or A.shape[0] != self.rack.size or A.shape[1] != A.shape[2]:
            raise StructureError(f"action matrices have shape {A.shape}, expected "
                                 f"({self.rack.size}, k, k)")
        if self.modulus < 0 or self.modulus == 1:
            raise StructureError(f"bad modulus {self.modulus}")
        if self.modulus:
            A = A % self.modulus
        A.setflags(write=False)
        object.__setattr__(self, "matrices", A)
        rep = validate(self, "module-action")
        if not rep.ok:
            raise AxiomError(rep)

    @property
    def rank(self):
        return self.matrices.shape[1]


def _first(mask_or_bad, shape):
    idx = np.argwhere(mask_or_bad)
    return tuple(int(v) for v in idx[0]) if len(idx) else None


def _validate_shelf(t):
    # x▷(y▷z) vs (x▷y)▷(x▷z) over all triples at once
    lhs = t[:, t]                                   # [x, y, z] -> x▷(y▷z)
    rhs = t[t[:, :, None], t[:, None, :]]          # [x, y, z] -> (x▷y)▷(x▷z)
    w = _first(lhs != rhs, lhs.shape)
    if w is not None:
        return ValidationReport(False, "self-distributivity", w)
    return ValidationReport(True)


def _validate_unit(t, u):
    n = len(t)
    bad = np.nonzero(t[u] != np.arange(n))[0]
    if len(bad):
        return ValidationReport(False, "unit acts trivially (1▷x = x)", (int(bad[0]),))
    bad = np.nonzero(t[:, u] != u)[0]
    if len(bad):
        return ValidationReport(False, "unit is fixed (x▷1 = 1)", (int(bad[0]),))
    return ValidationReport(True)


def _validate_rack(t):
    n = len(t)
    for x in range(n):
        seen = {}
        for y in range(n):
            z = int(t[x, y])
            if z in seen:
                return ValidationReport(False, "left translation bijective", (x, seen[z], y))
            seen[z] = y
    return ValidationReport(True)


def _validate_group(g):
    t, e = g.mul, g.identity
    n = len(t)
    if e is None or not 0 <= e < n:
        return ValidationReport(False, "identity", ())
    lhs = t[t[:, :, None], np.arange(n)[None, None, :]]   # (xy)z
    rhs = t[np.arange(n)[:, None, None], t[None, :, :]]   # x(yz)
    w = _first(lhs != rhs, lhs.shape)
    if w is not None:
        return ValidationReport(False, "associativity", w)
    bad = np.nonzero((t[e] != np.arange(n)) | (t[:, e] != np.arange(n)))[0]
    if len(bad):
        return ValidationReport(False, "identity law", (int(bad[0]),))
    for x in range(n):
        r = np.nonzero(t[x] == e)[0]
        if len(r) != 1 or t[r[0], x] != e:
            return ValidationReport(False, "inverse law", (x,))
    return ValidationReport(True)


def _validate_action(a):
    A, m, X = a.matrices.astype(object), a.modulus, a.rack
    k = A.shape[1]

    def red(M):
        return M % m if m else M

    for x in range(X.size):
        det = int(round(np.linalg.det(A[x].astype(float)))) if k else 1
        unit_det = (det in (1, -1)) if not m else np.gcd(det % m, m) == 1
        if not unit_det:
            return ValidationReport(False, "action matrix invertible", (x,))
    for x, y in itertools.product(range(X.size), repeat=2):
        lhs = red(A[x].dot(A[y]))
        rhs = red(A[X.table[x, y]].dot(A[x]))
        if not (lhs == rhs).all():
            c = int(np.argwhere(lhs != rhs)[0][1])
            return ValidationReport(False, "x·(y·a) = (x▷y)·(x·a)", (x, y, c))
    if X.unit is not None and not (red(A[X.unit]) == np.eye(k, dtype=object)).all():
        return ValidationReport(False, "unit acts as identity", (X.unit,))
    return ValidationReport(True)


_KINDS = ("shelf", "pointed-shelf", "rack", "pointed-rack", "group", "module-action")


def validate(structure, kind):
    """First violated axiom with a witness, or a passing report.

    kind is one of shelf, rack, pointed-rack, group, module-action.
    """
    if kind not in _KINDS:
        raise ValueError(f"unknown kind {kind!r}")
    if kind == "group":
        return _validate_group(structure)
    if kind == "module-action":
        return _validate_action(structure)
    t = structure.table
    if t.ndim != 2 or t.shape[0] != t.shape[1]:
        raise StructureError(f"table has shape {t.shape}")
    rep = _validate_shelf(t)
    if rep.ok and kind in ("rack", "pointed-rack"):
        rep = _validate_rack(t)
    if rep.ok and kind.startswith("pointed"):
        if structure.unit is None:
            return ValidationReport(False, "has a unit", ())
        rep = _validate_unit(t, structure.unit)
    return rep


def validate_table(table, kind, unit=None):
    """Validate a raw table without building a structure (never raises on axioms)."""
    class _T:
        pass
    s = _T()
    s.table = _table(table)
    s.unit = _check_unit(unit, len(s.table))
    return validate(s, kind)


# constructions

def conj_rack(G):
    """Conj(G): x▷y = x y x^{-1}, pointed at the identity."""
    m, inv = G.mul, G.inv
    n = G.size
    x = np.arange(n)[:, None]
    y = np.arange(n)[None, :]
    table = m[m[x, y], inv[x]]
    return FiniteRack(table, unit=G.identity, labels=G.labels,
                      name=f"Conj({G.name})" if G.name else "")


def augmented_rack(G, action, f, unit=None):
    """x▷y = f(x)·y for a G-set X (action[g, x] = g·x) and equivariant f: X → G."""
    act = np.asarray(action, dtype=np.int64)
    f = np.asarray(f, dtype=np.int64)
    if act.ndim != 2 or act.shape[0] != G.size:
        raise StructureError(f"action table has shape {act.shape}, expected ({G.size}, |X|)")
    nX = act.shape[1]
    if f.shape != (nX,) or (f < 0).any() or (f >= G.size).any():
        raise StructureError("f must map each point of X to a group element")
    if (act < 0).any() or (act >= nX).any():
        raise StructureError("action entries out of range")
    if not (act[G.identity] == np.arange(nX)).all():
        raise AxiomError(ValidationReport(False, "e·x = x", (int(np.argmax(act[G.identity] != np.arange(nX))),)))
    for g, h in itertools.product(range(G.size), repeat=2):
        bad = np.nonzero(act[G.mul[g, h]] != act[g][act[h]])[0]
        if len(bad):
            raise AxiomError(ValidationReport(False, "(gh)·x = g·(h·x)", (g, h, int(bad[0]))))
    for g in range(G.size):
        lhs = f[act[g]]
        rhs = G.mul[G.mul[g, f], G.inv[g]]
        bad = np.nonzero(lhs != rhs)[0]
        if len(bad):
            raise AxiomError(ValidationReport(False, "f(g·x) = g f(x) g^{-1}", (g, int(bad[0]))))
    table = act[f]
    if unit is not None and f[unit] != G.identity:
        raise AxiomError(ValidationReport(False, "f(1) = e", (unit,)))
    return FiniteRack(table, unit=unit)


# group fixtures

def cyclic_group(n):
    a = np.arange(n)
    return FiniteGroup((a[:, None] + a[None, :]) % n, 0, name=f"Z/{n}")


def direct_product(G, H, name=""):
    n, m = G.size, H.size
    t = np.empty((n * m, n * m), dtype=np.int64)
    for (a, b), (c, d) in itertools.product(itertools.product(range(n), range(m)), repeat=2):
        t[a * m + b, c * m + d] = G.mul[a, c] * m + H.mul[b, d]
    return FiniteGroup(t, G.identity * m + H.identity, name=name)


def symmetric_group(k):
    """S_k on one-line tuples in lexicographic order; (gh)(i) = g(h(i))."""
    perms = list(itertools.permutations(range(1, k + 1)))
    index = {p: i for i, p in enumerate(perms)}
    t = np.empty((len(perms), len(perms)), dtype=np.int64)
    for i, g in enumerate(perms):
        for j, h in enumerate(perms):
            t[i, j] = index[tuple(g[h[s] - 1] for s in range(k))]
    labels = ["".join(map(str, p)) for p in perms]
    return FiniteGroup(t, 0, labels=labels, name=f"S{k}")


def trivial_rack(k):
    return FiniteRack(np.tile(np.arange(k), (k, 1)), name=f"T{k}")


def dihedral_quandle(n):
    x = np.arange(n)
    return FiniteRack((2 * x[:, None] - x[None, :]) % n, name=f"R{n}")


def constant_shelf(k):
    """x▷y = 0: a shelf that is not a rack for k ≥ 2."""
    return FiniteShelf(np.zeros((k, k), dtype=np.int64), name=f"Const{k}")


def _groups():
    return {
        "trivial": lambda: FiniteGroup([[0]], 0, name="1"),
        "Z2": lambda: cyclic_group(2),
        "Z3": lambda: cyclic_group(3),
        "Z4": lambda: cyclic_group(4),
        "Z2xZ2": lambda: direct_product(cyclic_group(2), cyclic_group(2), name="Z/2xZ/2"),
        "S3": lambda: symmetric_group(3),
    }


GROUP_FIXTURES = _groups()

RACK_FIXTURES = {
    "T1": lambda: trivial_rack(1),
    "T2": lambda: trivial_rack(2),
    "T3": lambda: trivial_rack(3),
    "T4": lambda: trivial_rack(4),
    "ConjZ2": lambda: conj_rack(cyclic_group(2)),
    "ConjZ3": lambda: conj_rack(cyclic_group(3)),
    "ConjZ4": lambda: conj_rack(cyclic_group(4)),
    "ConjZ2xZ2": lambda: conj_rack(GROUP_FIXTURES["Z2xZ2"]()),
    "ConjS3": lambda: conj_rack(symmetric_group(3)),
    "R3": lambda: dihedral_quandle(3),
    "R4": lambda: dihedral_quandle(4),
    "R5": lambda: dihedral_quandle(5),
}


def rack_fixture(name):
    try:
        return RACK_FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown rack fixture {name!r}; have {sorted(RACK_FIXTURES)}") from None


def group_fixture(name):
    try:
        return GROUP_FIXTURES[name]()
    except KeyError:
        raise KeyError(f"unknown group fixture {name!r}; have {sorted(GROUP_FIXTURES)}") from None


def permutation_module(G):
    """Conj(G) acting on Z^|G| by permuting basis vectors via conjugation."""
    X = conj_rack(G)
    n = X.size
    A = np.zeros((n, n, n), dtype=np.int64)
    for x in range(n):
        A[x, X.table[x], np.arange(n)] = 1
    return RackModuleAction(X, A)


# JSON ingestion

def structure_from_dict(d):
    """Build a rack, shelf or group from the JSON ingestion format."""
    if not isinstance(d, dict):
        raise StructureError("top level must be an object")
    schema = d.get("schema", 1)
    if schema != 1:
        raise StructureError(f"unsupported schema {schema!r}")
    kind = d.get("kind")
    if kind not in ("rack", "shelf", "group"):
        raise StructureError(f"kind must be rack, shelf or group, got {kind!r}")
    if "table" not in d:
        raise StructureError("missing 'table'")
    size = d.get("size")
    if size is not None and (not isinstance(size, int) or size < 1):
        raise StructureError(f"size must be a positive integer, got {size!r}")
    table = _table(d["table"], size)
    kw = dict(labels=d.get("labels"), name=d.get("name", ""))
    if kind == "group":
        return FiniteGroup(table, d.get("unit"), **kw)
    cls = FiniteRack if kind == "rack" else FiniteShelf
    return cls(table, unit=d.get("unit"), **kw)


def load_structure(spec):
    """Path to a JSON file, or 'fixture:NAME' for a shipped fixture."""
    spec = str(spec)
    if spec.startswith("fixture:"):
        name = spec.split(":", 1)[1]
        if name in RACK_FIXTURES:
            return rack_fixture(name)
        return group_fixture(name)
    try:
        d = json.loads(Path(spec).read_text())
    except json.JSONDecodeError as e:
        raise StructureError(f"invalid JSON: {e.msg}", (e.lineno, e.colno)) from None
    return structure_from_dict(d)
