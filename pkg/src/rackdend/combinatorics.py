"""Permutations, shuffles and the change-of-variable maps used in the proofs.

Permutations are 1-based in one-line notation: images[k-1] = σ(k).
Composition is right to left: (σ * γ)(k) = σ(γ(k)).
A cycle (a b c) sends a → b → c → a.
"""
import enum
import itertools
from functools import cached_property, lru_cache
from math import comb


class Permutation:
    __slots__ = ("images", "__dict__")

    def __init__(self, images):
        images = tuple(int(v) for v in images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise ValueError(f"{images} is not a permutation of 1..{len(images)}")
        self.images = images

    @classmethod
    def identity(cls, n):
        return cls(range(1, n + 1))

    @classmethod
    def cycle(cls, n, *points):
        """The cycle (p1 p2 ... pr) in S_n."""
        img = list(range(1, n + 1))
        if len(set(points)) != len(points) or any(not 1 <= p <= n for p in points):
            raise ValueError(f"bad cycle {points} in S_{n}")
        for a, b in zip(points, points[1:] + points[:1]):
            img[a - 1] = b
        return cls(img)

    @property
    def n(self):
        return len(self.images)

    def __call__(self, k):
        return self.images[k - 1]

    def __mul__(self, other):
        if self.n != other.n:
            raise ValueError(f"cannot compose S_{self.n} with S_{other.n}")
        return Permutation(self.images[g - 1] for g in other.images)

    def inverse(self):
        inv = [0] * self.n
        for k, v in enumerate(self.images, 1):
            inv[v - 1] = k
        return Permutation(inv)

    @cached_property
    def sign(self):
        inv = sum(1 for a, b in itertools.combinations(self.images, 2) if a > b)
        return -1 if inv % 2 else 1

    def __eq__(self, other):
        return isinstance(other, Permutation) and self.images == other.images

    def __hash__(self):
        return hash(self.images)

    def __repr__(self):
        return f"Permutation({list(self.images)})"

    def __lt__(self, other):
        return self.images < other.images

    def is_identity(self):
        return all(v == k for k, v in enumerate(self.images, 1))


def sign(sigma):
    """ε(σ) = (-1)^(number of inversions)."""
    return sigma.sign


def consecutive_cycle(n, a, b):
    """(a a±1 ... b) in S_n, stepping towards b; the identity when a == b."""
    step = 1 if b >= a else -1
    return Permutation.cycle(n, *range(a, b + step, step)) if a != b else Permutation.identity(n)


def star(sigma, gamma):
    """σ ⋆ γ: σ on the first p letters, γ shifted by p on the rest."""
    p = sigma.n
    return Permutation(sigma.images + tuple(p + g for g in gamma.images))


class ShuffleClass(enum.Enum):
    ALL = "all"
    TOP_FIXED = "top-fixed"   # σ(p1+p2) = p1+p2, the ≻ class
    LEFT_MAX = "left-max"     # σ(p1) = p1+p2, the ≺ class


def shuffle_class_of(sigma, p1, p2):
    """Which of TopFixed/LeftMax a (p1, p2)-shuffle belongs to.

    When one block is empty the two defining conditions are vacuous or
    coincide; we put id ∈ Sh_{p,0} (p ≥ 1) in LeftMax and id ∈ Sh_{0,p}
    in TopFixed, which is what the counts C(p1+p2-1, p1) and
    C(p1+p2-1, p1-1) require and what keeps the dendriform axioms true
    when a degree-0 argument is involved.
    """
    if p1 == 0:
        return ShuffleClass.TOP_FIXED
    if p2 == 0:
        return ShuffleClass.LEFT_MAX
    if sigma(p1 + p2) == p1 + p2:
        return ShuffleClass.TOP_FIXED
    return ShuffleClass.LEFT_MAX


def is_shuffle(sigma, *blocks):
    """σ is increasing on each consecutive block of the given sizes."""
    if sum(blocks) != sigma.n:
        return False
    start = 0
    for b in blocks:
        seg = sigma.images[start:start + b]
        if any(x > y for x, y in zip(seg, seg[1:])):
            return False
        start += b
    return True


@lru_cache(maxsize=None)
def _shuffles(p1, p2, cls):
    n = p1 + p2
    out = []
    for first in itertools.combinations(range(1, n + 1), p1):
        rest = [v for v in range(1, n + 1) if v not in first]
        s = Permutation(first + tuple(rest))
        crossings = sum(v - k for k, v in enumerate(first, 1))
        s.__dict__["sign"] = -1 if crossings % 2 else 1
        if cls is ShuffleClass.ALL or shuffle_class_of(s, p1, p2) is cls:
            out.append(s)
    return tuple(out)


def shuffles(p1, p2, cls=ShuffleClass.ALL):
    """(p1, p2)-shuffles of the given class, with signs precomputed."""
    if p1 < 0 or p2 < 0:
        raise ValueError("block sizes must be nonnegative")
    return list(_shuffles(int(p1), int(p2), ShuffleClass(cls)))


def shuffle_count(p1, p2, cls=ShuffleClass.ALL):
    """Closed-form cardinality: C(n,p1), C(n-1,p1), C(n-1,p1-1) with n = p1+p2."""
    cls = ShuffleClass(cls)
    n = p1 + p2
    if cls is ShuffleClass.ALL:
        return comb(n, p1)
    k = p1 if cls is ShuffleClass.TOP_FIXED else p1 - 1
    if k < 0:
        return 0
    if n == 0:
        return 1
    return comb(n - 1, k)


def triple_shuffles(p1, p2, p3):
    """(p1, p2, p3)-shuffles, built from the image sets of the three blocks."""
    n = p1 + p2 + p3
    out = []
    for first in itertools.combinations(range(1, n + 1), p1):
        rest = [v for v in range(1, n + 1) if v not in first]
        for second in itertools.combinations(rest, p2):
            third = tuple(v for v in rest if v not in second)
            out.append(Permutation(first + second + third))
    return out


def _need(cond, msg):
    if not cond:
        raise ValueError(msg)


def alpha(sigma, gamma, p1, p2, p3):
    """α(σ, γ) = σ ∘ (1_{p1} ⋆ γ) for σ ∈ Sh_{p1,p2+p3}, γ ∈ Sh_{p2,p3}."""
    _need(is_shuffle(sigma, p1, p2 + p3), f"{sigma} not in Sh_{p1},{p2 + p3}")
    _need(is_shuffle(gamma, p2, p3), f"{gamma} not in Sh_{p2},{p3}")
    return sigma * star(Permutation.identity(p1), gamma)


def beta(sigma, gamma, p1, p2, p3):
    """β(σ, γ) = σ ∘ (γ ⋆ 1_{p3}) for σ ∈ Sh_{p1+p2,p3}, γ ∈ Sh_{p1,p2}."""
    _need(is_shuffle(sigma, p1 + p2, p3), f"{sigma} not in Sh_{p1 + p2},{p3}")
    _need(is_shuffle(gamma, p1, p2), f"{gamma} not in Sh_{p1},{p2}")
    return sigma * star(gamma, Permutation.identity(p3))


def alpha_subset(sigma, gamma, p1, p2, p3):
    """α on one-line words: (a_1..a_{p1}, a_{p1+b_1}, ..., a_{p1+b_{p2+p3}})."""
    a, b = sigma.images, gamma.images
    return Permutation(a[:p1] + tuple(a[p1 + bk - 1] for bk in b))


def beta_subset(sigma, gamma, p1, p2, p3):
    """β on one-line words: (a_{b_1}, ..., a_{b_{p1+p2}}, a_{p1+p2+1}, ..., a_n)."""
    a, b = sigma.images, gamma.images
    return Permutation(tuple(a[bk - 1] for bk in b) + a[p1 + p2:])


def alpha_inverse(tau, p1, p2, p3):
    """(σ, γ) with α(σ, γ) = τ."""
    n = p1 + p2 + p3
    first = tau.images[:p1]
    rest = sorted(set(range(1, n + 1)) - set(first))
    sigma = Permutation(tuple(first) + tuple(rest))
    pos = {v: k for k, v in enumerate(rest, 1)}
    gamma = Permutation(pos[v] for v in tau.images[p1:])
    return sigma, gamma


def beta_inverse(tau, p1, p2, p3):
    """(σ, γ) with β(σ, γ) = τ."""
    head = sorted(tau.images[:p1 + p2])
    sigma = Permutation(tuple(head) + tau.images[p1 + p2:])
    pos = {v: k for k, v in enumerate(head, 1)}
    gamma = Permutation(pos[v] for v in tau.images[:p1 + p2])
    return sigma, gamma


def drop_last(sigma):
    """The restriction of σ ∈ S_{n+1} fixing n+1 to S_n."""
    _need(sigma(sigma.n) == sigma.n, f"{sigma} does not fix {sigma.n}")
    return Permutation(sigma.images[:-1])


def phi(sigma, i):
    """φ(σ, i) = (n+1 ... σ(i)) ∘ σ ∘ (i ... n+1), viewed in S_n."""
    m = sigma.n
    _need(1 <= i <= m, f"i = {i} out of range 1..{m}")
    full = consecutive_cycle(m, m, sigma(i)) * sigma * consecutive_cycle(m, i, m)
    return drop_last(full)


def psi(sigma, i):
    return phi(sigma, i), sigma(i)


def nu(sigma, i):
    """ν(σ, i) = (i i-1 ... 1) ∘ (1 ⋆ σ) in S_{n+1}."""
    n = sigma.n
    _need(1 <= i <= n + 1, f"i = {i} out of range 1..{n + 1}")
    return consecutive_cycle(n + 1, i, 1) * star(Permutation.identity(1), sigma)


def xi(sigma, i):
    """ξ(σ, i) = (i i+1 ... n+1) ∘ (σ ⋆ 1) in S_{n+1}."""
    n = sigma.n
    _need(1 <= i <= n + 1, f"i = {i} out of range 1..{n + 1}")
    return consecutive_cycle(n + 1, i, n + 1) * star(sigma, Permutation.identity(1))


def kappa(sigma, i):
    """κ(σ, i) = (σ(i) σ(i+1)) ∘ σ, paired with i."""
    _need(1 <= i <= sigma.n - 1, f"i = {i} out of range 1..{sigma.n - 1}")
    return Permutation.cycle(sigma.n, sigma(i), sigma(i + 1)) * sigma, i


def all_permutations(n):
    return [Permutation(p) for p in itertools.permutations(range(1, n + 1))]
