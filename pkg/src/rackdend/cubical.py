"""Standard cubes □_n, face maps, σ-functors, the rack nerve and group functors.

A vertex of □_n is a subset of {1..n} stored as a bitmask (bit k-1 for k).
An edge is a pair (A, b) with b ∉ A, going A → A ⊎ {b}.
"""
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from rackdend import kernels

MAX_DIM = 30


def _dim(n):
    if not 0 <= n <= MAX_DIM:
        raise ValueError(f"cube dimension {n} outside 0..{MAX_DIM}")


def to_mask(subset):
    m = 0
    for k in subset:
        m |= 1 << (k - 1)
    return m


def to_subset(mask):
    out, k = [], 1
    while mask:
        if mask & 1:
            out.append(k)
        mask >>= 1
        k += 1
    return tuple(out)


def prefix(k):
    """[k] = {1..k}."""
    return (1 << k) - 1


def face_vertex(n, i, eps, A):
    """∂_{i,ε}: □_{n-1} → □_n on vertices; inserts ε as the i-th coordinate."""
    _dim(n)
    if not 1 <= i <= n:
        raise ValueError(f"face index {i} outside 1..{n}")
    if A >> (n - 1):
        raise ValueError(f"vertex {to_subset(A)} not in □_{n - 1}")
    low = A & prefix(i - 1)
    high = (A >> (i - 1)) << i
    return low | high | (int(eps) << (i - 1))


def face_composite(n, faces, A):
    """Apply a composite written outer-first: faces = [(i_r, ε_r), ..., (i_1, ε_1)].

    The innermost face lands in □_{n-r+1}, the outermost in □_n.
    """
    dims = range(n - len(faces) + 1, n + 1)
    for (i, e), d in zip(reversed(faces), dims):
        A = face_vertex(d, i, e, A)
    return A


def normalize_faces(faces):
    """Rewrite a composite into the unique form with indices increasing inward→outward.

    Uses ∂_{i,ε}∘∂_{j-1,ω} = ∂_{j,ω}∘∂_{i,ε} (i < j) as a rewriting rule.
    """
    f = list(faces)
    changed = True
    while changed:
        changed = False
        for t in range(len(f) - 1):
            (a, e), (b, w) = f[t], f[t + 1]   # outer ∂_a after inner ∂_b
            if a <= b:
                f[t], f[t + 1] = (b + 1, w), (a, e)
                changed = True
    return f


def normal_form_from_vertex_map(m, n, vmap):
    """Read the ascending factorisation off a face composite's vertex map."""
    full = vmap(prefix(m))
    empty = vmap(0)
    fixed = [k for k in range(1, n + 1)
             if ((empty >> (k - 1)) & 1) == ((full >> (k - 1)) & 1)]
    return [(k, (empty >> (k - 1)) & 1) for k in reversed(fixed)]


def sigma_vertex(sigma, k):
    """Vertex σ([k]) = {σ(1), ..., σ(k)} of □_n."""
    if not 0 <= k <= sigma.n:
        raise ValueError(f"k = {k} outside 0..{sigma.n}")
    return to_mask(sigma.images[:k])


def perm_vertex(sigma, A):
    """σ(A) = {σ(a) : a ∈ A}."""
    return to_mask(sigma(a) for a in to_subset(A))


def simplicial_face(n, i, k):
    """∂_i: Δ_{n-1} → Δ_n on vertices 0..n-1 (skips i)."""
    if not 0 <= i <= n:
        raise ValueError(f"simplicial face {i} outside 0..{n}")
    return k if k < i else k + 1


@lru_cache(maxsize=None)
def edges(n):
    """All edges (A, b) of □_n, sorted by (A, b)."""
    _dim(n)
    return tuple((A, b) for A in range(1 << n) for b in range(1, n + 1) if not (A >> (b - 1)) & 1)


@lru_cache(maxsize=None)
def edge_index(n):
    return {e: k for k, e in enumerate(edges(n))}


@lru_cache(maxsize=None)
def preferred_squares(n):
    """Tuples of edges ((A,A+k), (A+k,A+k+l), (A,A+l), (A+l,A+k+l)) with k < l."""
    out = []
    for A in range(1 << n):
        free = [k for k in range(1, n + 1) if not (A >> (k - 1)) & 1]
        for k, l in itertools.combinations(free, 2):
            bk, bl = 1 << (k - 1), 1 << (l - 1)
            out.append(((A, k), (A | bk, l), (A, l), (A | bl, k)))
    return tuple(out)


def map_edge(vmap, edge):
    """Image of an edge under a vertex map that sends edges to edges."""
    A, b = edge
    src, dst = vmap(A), vmap(A | (1 << (b - 1)))
    diff = dst & ~src
    if src & ~dst or diff == 0 or diff & (diff - 1):
        raise ValueError(f"vertex map does not send edge {edge} to an edge")
    return src, diff.bit_length()


def is_trunk_map(m, n, vmap):
    """vmap: □_m → □_n sends edges to edges and preferred squares to preferred squares."""
    squares = set(preferred_squares(n))
    try:
        for sq in preferred_squares(m):
            if tuple(map_edge(vmap, e) for e in sq) not in squares:
                return False
        for e in edges(m):
            map_edge(vmap, e)
    except ValueError:
        return False
    return True


# rack nerve

def edge_word(A, b):
    """0-based generator positions x ≤ b, x ∉ A, in increasing order."""
    if (A >> (b - 1)) & 1:
        raise ValueError(f"{b} already in {to_subset(A)}")
    return [x - 1 for x in range(1, b + 1) if not (A >> (x - 1)) & 1]


def _rprod(table, xs):
    acc = xs[-1]
    for a in reversed(xs[:-1]):
        acc = int(table[a, acc])
    return acc


@dataclass(frozen=True)
class RackCubeLabel:
    """A trunk map □_n → X, stored by its generator edges (x_1, ..., x_n)."""

    rack: object
    gens: tuple

    def __post_init__(self):
        g = tuple(int(x) for x in self.gens)
        if any(not 0 <= x < self.rack.size for x in g):
            raise ValueError(f"{g} has entries outside the rack")
        object.__setattr__(self, "gens", g)

    @property
    def n(self):
        return len(self.gens)

    def label(self, A, b):
        return label_edge(self, A, b)

    def labeling(self):
        """The full edge labeling (η⁻¹), in edges(n) order."""
        return tuple(self.label(A, b) for A, b in edges(self.n))

    def restrict(self, m, vmap):
        """η(F∘g) for a trunk map g: □_m → □_n given on vertices."""
        out = []
        for k in range(1, m + 1):
            A, b = map_edge(vmap, (prefix(k - 1), k))
            out.append(self.label(A, b))
        return RackCubeLabel(self.rack, out)


def label_edge(L, A, b):
    """F(A → A ⊎ {b}) = x_{j_1} ▷ (... ▷ (x_{j_r} ▷ x_b)) over j ≤ b, j ∉ A."""
    if not 1 <= b <= L.n:
        raise ValueError(f"{b} outside 1..{L.n}")
    return _rprod(L.rack.table, [L.gens[p] for p in edge_word(A, b)])


def nerve_face(rack, i, eps, xs):
    """N(X)(∂_{i,ε}) on tuples."""
    n = len(xs)
    if not 1 <= i <= n:
        raise ValueError(f"face index {i} outside 1..{n}")
    xs = [int(x) for x in xs]
    if eps:
        return tuple(xs[:i - 1] + xs[i:])
    xi = xs[i - 1]
    return tuple(xs[:i - 1] + [int(rack.table[xi, y]) for y in xs[i:]])


def nerve_face_words(n, i, eps):
    """Words for kernels.bracket_gather realising nerve_face on all n-tuples."""
    if eps:
        return [[k] for k in range(n) if k != i - 1]
    return [[k] for k in range(i - 1)] + [[i - 1, k] for k in range(i, n)]


def all_edge_labelings(rack, n):
    """η⁻¹ of every n-tuple at once: array (|X|^n, #edges)."""
    out = np.zeros((rack.size**n, len(edges(n))), dtype=np.int64)
    for k, (A, b) in enumerate(edges(n)):
        out[:, k] = kernels.bracket_gather(rack.table, n, [edge_word(A, b)])
    return out


def restrict_all(rack, n, m, vmap):
    """η(F∘g) for every F ∈ X^n at once, g: □_m → □_n a trunk map: array (|X|^n, m)."""
    out = np.zeros((rack.size**n, m), dtype=np.int64)
    for k in range(1, m + 1):
        A, b = map_edge(vmap, (prefix(k - 1), k))
        out[:, k - 1] = kernels.bracket_gather(rack.table, n, [edge_word(A, b)])
    return out


ENUM_GUARD = 3**12


def enumerate_trunk_maps(rack, n, guard=ENUM_GUARD):
    """Brute force: all edge labelings of □_n satisfying c = a▷b, d = a on every square.

    Returns (edges, labelings) with labelings in lexicographic order.
    """
    es = edges(n)
    if rack.size ** len(es) > guard:
        raise ValueError(f"|X|^#edges = {rack.size}^{len(es)} exceeds the guard {guard}")
    idx = edge_index(n)
    sq = np.array([[idx[e] for e in s] for s in preferred_squares(n)], dtype=np.int64).reshape(-1, 4)
    return es, kernels.trunk_labelings(rack.table, len(es), sq)


def eta(n, labeling):
    """Generator edges ([k-1] → [k]) of a raw labeling."""
    idx = edge_index(n)
    return tuple(int(labeling[idx[(prefix(k - 1), k)]]) for k in range(1, n + 1))


# group functors □_n → G

@dataclass(frozen=True)
class GroupCubeFunctor:
    """Functor □_n → G given by vertex potentials φ(A) = F(∅ → A)."""

    group: object
    n: int
    potentials: tuple

    def __post_init__(self):
        p = tuple(int(x) for x in self.potentials)
        if len(p) != 1 << self.n:
            raise ValueError(f"need {1 << self.n} potentials, got {len(p)}")
        if p[0] != self.group.identity:
            raise ValueError("potential of ∅ must be the identity")
        object.__setattr__(self, "potentials", p)

    def morphism(self, A, B):
        """F(A → B) for A ⊆ B."""
        if A & ~B:
            raise ValueError(f"{to_subset(A)} ⊄ {to_subset(B)}")
        G = self.group
        return int(G.mul[G.inv[self.potentials[A]], self.potentials[B]])

    def edge_label(self, A, b):
        return self.morphism(A, A | (1 << (b - 1)))

    def squares_commute(self):
        G = self.group
        for a, b, c, d in preferred_squares(self.n):
            if G.mul[self.edge_label(*a), self.edge_label(*b)] != G.mul[self.edge_label(*c), self.edge_label(*d)]:
                return False
        return True

    def precompose(self, m, vmap):
        """F∘g for a functor g: □_m → □_n given on vertices."""
        base = vmap(0)
        return GroupCubeFunctor(self.group, m, tuple(self.morphism(base, vmap(A)) for A in range(1 << m)))

    def along(self, sigma):
        """λ(F∘σ): the simplex tuple y_k = F(σ([k-1]) → σ([k]))."""
        return tuple(self.morphism(sigma_vertex(sigma, k - 1), sigma_vertex(sigma, k))
                     for k in range(1, sigma.n + 1))


def functor_from_labels(group, n, label):
    """Build potentials by following increasing paths; label(A, b) gives edge labels."""
    pot = [None] * (1 << n)
    pot[0] = group.identity
    for A in range(1, 1 << n):
        b = A.bit_length()
        prev = A & ~(1 << (b - 1))
        pot[A] = int(group.mul[pot[prev], label(prev, b)])
    F = GroupCubeFunctor(group, n, pot)
    for A, b in edges(n):
        if F.edge_label(A, b) != label(A, b):
            raise ValueError(f"labels are not functorial at edge ({to_subset(A)}, {b})")
    return F


def extend_group_functor(G, gens):
    """The functor inc∘η⁻¹(gens): □_n → G for Conj(G).

    Edge (A, A⊎{b}) carries the Conj(G) label x_{j_1}▷(...▷x_b), i.e. the
    conjugate P x_b P⁻¹ with P the ordered product of x_j, j < b, j ∉ A.
    For abelian G this is just x_b.
    """
    X = _conj(G)
    L = RackCubeLabel(X, gens)
    return functor_from_labels(G, L.n, L.label)


@lru_cache(maxsize=64)
def _conj(G):
    from rackdend.structures import conj_rack
    return conj_rack(G)


def extend_group_potentials(G, n):
    """Potentials φ(A) of extend_group_functor for every n-tuple at once.

    Array of shape (|G|^n, 2^n), rows in tuple-index order. Functoriality of
    the Conj(G) labels is checked on every edge.
    """
    labels = all_edge_labelings(_conj(G), n)
    idx = edge_index(n)
    pot = np.zeros((G.size ** n, 1 << n), dtype=np.int64)
    pot[:, 0] = G.identity
    for A in range(1, 1 << n):
        b = A.bit_length()
        prev = A & ~(1 << (b - 1))
        pot[:, A] = G.mul[pot[:, prev], labels[:, idx[(prev, b)]]]
    for (A, b), k in idx.items():
        got = G.mul[G.inv[pot[:, A]], pot[:, A | (1 << (b - 1))]]
        if not np.array_equal(got, labels[:, k]):
            raise ArithmeticError(f"labels not functorial at edge ({to_subset(A)}, {b})")
    return pot


def lambda_tuple(F):
    """Generator edges F([k-1] → [k])."""
    return tuple(F.edge_label(prefix(k - 1), k) for k in range(1, F.n + 1))


def enumerate_group_functors(G, n, guard=1 << 16):
    """All functors □_n → G (potentials with φ(∅) = e), lexicographic in potentials."""
    count = G.size ** ((1 << n) - 1)
    if count > guard:
        raise ValueError(f"{count} functors exceed the guard {guard}")
    for rest in itertools.product(range(G.size), repeat=(1 << n) - 1):
        yield GroupCubeFunctor(G, n, (G.identity,) + rest)


# standard embeddings

def i_p1_faces(p1, p2):
    """i_{p1} = ∂_{p1+p2,0} ∘ ... ∘ ∂_{p1+1,0}, outer-first."""
    return [(d, 0) for d in range(p1 + p2, p1, -1)]


def i_p2_faces(p1, p2):
    """i_{p2} = ∂_{1,1}^{p1+p2} ∘ ... ∘ ∂_{1,1}^{p2+1}, outer-first."""
    return [(1, 1)] * p1


def shuffle_embedding(sigma, p1, p2, block):
    """Vertex map of σ∘i_{p1} (block 1) or σ∘i_{p2} (block 2)."""
    n = p1 + p2
    faces = i_p1_faces(p1, p2) if block == 1 else i_p2_faces(p1, p2)

    def vmap(A):
        return perm_vertex(sigma, face_composite(n, faces, A))
    return vmap


def rho_sigma(L, sigma, p1, p2):
    """ρ_σ(F) = (η(F∘σ∘i_{p1}), η(F∘σ∘i_{p2}))."""
    return (L.restrict(p1, shuffle_embedding(sigma, p1, p2, 1)),
            L.restrict(p2, shuffle_embedding(sigma, p1, p2, 2)))



def _flat(cols, size):
    """Row-wise mixed-radix index of an (N, m) array of elements."""
    out = np.zeros(cols.shape[0], dtype=np.int64)
    for k in range(cols.shape[1]):
        out = out * size + cols[:, k]
    return out


def nerve_oracle(rack, n, guard=ENUM_GUARD):
    """Brute-force check of the nerve bijection η and of the face formulas.

    Enumerates all trunk maps □_n → X, checks they are exactly the η⁻¹ of the
    n-tuples, and that precomposition with every ∂_{i,ε} acts on η-tuples by
    nerve_face. Returns a JSON-ready dict.
    """
    es, labs = enumerate_trunk_maps(rack, n, guard)
    idx = edge_index(n)
    gens = labs[:, [idx[(prefix(k - 1), k)] for k in range(1, n + 1)]]
    tidx = _flat(gens, rack.size)
    out = {"rack": rack.name, "size": rack.size, "n": n, "labelings": int(len(labs)),
           "expected": rack.size ** n, "bijection": True, "faces": True, "mismatch": None}
    full = all_edge_labelings(rack, n)
    if len(labs) != rack.size ** n or len(np.unique(tidx)) != len(tidx) or not np.array_equal(labs, full[tidx]):
        out["bijection"] = False
        bad = [k for k in range(min(len(labs), len(full))) if not np.array_equal(labs[k], full[tidx[k]])]
        out["mismatch"] = {"labeling": labs[bad[0]].tolist() if bad else None}
        return out
    for i in range(1, n + 1):
        for e in (0, 1):
            vm = lambda A, i=i, e=e: face_vertex(n, i, e, A)
            cols = [idx[map_edge(vm, (prefix(k - 1), k))] for k in range(1, n)]
            got = _flat(labs[:, cols], rack.size)
            want = kernels.bracket_gather(rack.table, n, nerve_face_words(n, i, e))[tidx]
            if not np.array_equal(got, want):
                k = int(np.nonzero(got != want)[0][0])
                out["faces"] = False
                out["mismatch"] = {"gens": gens[k].tolist(), "i": i, "eps": e,
                                   "precomposed": labs[k, cols].tolist(),
                                   "formula": list(nerve_face(rack, i, e, gens[k].tolist()))}
                return out
    return out
