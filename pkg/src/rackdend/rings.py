"""Coefficient rings for cochain values.

Values of a cochain live in an array whose first axis runs over tuples and
whose trailing axes hold one ring element: () for Z and Z/m, (k, k) for
matrices. Z uses object dtype (exact); Z/m uses int64.
"""
import itertools
import re
from dataclasses import dataclass

import numpy as np

Z_RANGE = (-3, 3)


@dataclass(frozen=True)
class CoefficientRing:
    modulus: int = 0     # 0 means Z
    k: int = 0           # 0 for scalars, else k×k matrices

    def __post_init__(self):
        if self.modulus < 0 or self.modulus == 1:
            raise ValueError(f"bad modulus {self.modulus}")
        if self.k < 0:
            raise ValueError(f"bad matrix size {self.k}")
        if self.modulus and self.modulus >= 2**31:
            raise ValueError("modulus must be below 2^31")

    @property
    def shape(self):
        return (self.k, self.k) if self.k else ()

    @property
    def dtype(self):
        return object if self.modulus == 0 else np.int64

    @property
    def commutative(self):
        return self.k <= 1

    @property
    def snf_amenable(self):
        return self.k == 0

    def descriptor(self):
        base = "Z" if not self.modulus else f"Z/{self.modulus}"
        if not self.k:
            return base
        return f"mat{self.k}/Z" + (str(self.modulus) if self.modulus else "")

    __str__ = descriptor

    def reduce(self, a):
        a = np.asarray(a, dtype=self.dtype) if not isinstance(a, np.ndarray) or a.dtype != self.dtype else a
        return a % self.modulus if self.modulus else a

    def zeros(self, count, extra=()):
        z = np.zeros((count,) + tuple(extra) + self.shape, dtype=np.int64)
        return z.astype(self.dtype)

    def one(self):
        if self.k:
            return np.eye(self.k, dtype=np.int64).astype(self.dtype)
        return np.asarray(1, dtype=self.dtype)

    def add(self, a, b):
        return self.reduce(a + b)

    def sub(self, a, b):
        return self.reduce(a - b)

    def neg(self, a):
        return self.reduce(-a)

    def scale(self, c, a):
        return self.reduce(c * a)

    def mul(self, a, b):
        """Elementwise product over any leading axes."""
        if self.k:
            return self.reduce(np.matmul(a, b))
        return self.reduce(a * b)

    def equal(self, a, b):
        return bool(np.all(self.reduce(a) == self.reduce(b)))

    def random(self, rng, count):
        """count random elements; Z draws entries uniformly from [-3, 3]."""
        shape = (count,) + self.shape
        if self.modulus:
            return rng.integers(0, self.modulus, size=shape, dtype=np.int64)
        lo, hi = Z_RANGE
        return rng.integers(lo, hi + 1, size=shape).astype(object)

    def elements(self, limit=16):
        """All elements of a finite carrier with at most `limit` elements."""
        if not self.modulus:
            raise ValueError("Z is infinite")
        count = self.modulus ** (self.k * self.k if self.k else 1)
        if count > limit:
            raise ValueError(f"{count} elements exceed the limit {limit}")
        vals = itertools.product(range(self.modulus), repeat=self.k * self.k if self.k else 1)
        return np.array(list(vals), dtype=np.int64).reshape((count,) + self.shape)

    def to_json(self, a):
        a = np.asarray(a)
        return np.vectorize(int, otypes=[object])(a).tolist() if a.size else a.tolist()


def Integers():
    return CoefficientRing(0, 0)


def IntegersMod(m):
    return CoefficientRing(int(m), 0)


def MatrixRing(k, m=0):
    return CoefficientRing(int(m), int(k))


_RE = re.compile(r"^(?:mat(\d+)/)?Z(?:/?(\d+))?$")


def parse_ring(text):
    """'Z', 'Z/m', 'matK/Z', 'matK/Zm' (also 'matK/Z/m')."""
    if isinstance(text, CoefficientRing):
        return text
    t = str(text).strip()
    m = _RE.match(t)
    if not m:
        raise ValueError(f"cannot parse coefficient ring {text!r}; use Z, Z/m or matK/Zm")
    k, mod = m.group(1), m.group(2)
    if not m.group(1) and mod and "/" not in t:
        raise ValueError(f"cannot parse coefficient ring {text!r}; write Z/{mod}")
    mod = int(mod) if mod else 0
    if mod == 1:
        raise ValueError("Z/1 is the zero ring; not supported")
    k = int(k) if k else 0
    if k == 0 and t.startswith("mat"):
        raise ValueError("matrix size must be positive")
    return CoefficientRing(mod, k)


class TensorRing:
    """Free bookkeeping ring used for exhaustive basis checks.

    A value is an integer tensor; mul is the outer product, which keeps
    factors in order, so an identity holding here holds for basis cochains
    over every associative ring with trivial action.
    """

    dtype = np.int64
    k = 0
    modulus = 0
    shape = ()
    commutative = False

    def reduce(self, a):
        return a

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def scale(self, c, a):
        return c * a

    def mul(self, a, b):
        """Per leading tuple index: a[t, I] * b[t, J] -> [t, I, J]."""
        ea, eb = a.ndim - 1, b.ndim - 1
        return a.reshape(a.shape + (1,) * eb) * b.reshape(b.shape[:1] + (1,) * ea + b.shape[1:])

    def equal(self, a, b):
        return bool(np.array_equal(a, b))

    def __eq__(self, other):
        return isinstance(other, TensorRing)

    def __hash__(self):
        return hash(TensorRing)

    def descriptor(self):
        return "basis"

    def to_json(self, a):
        return np.asarray(a).tolist()
