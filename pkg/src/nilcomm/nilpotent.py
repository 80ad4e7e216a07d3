"""Nilpotent orbits of gl(n) over F_q: Jordan types, the square-zero
representatives ``e_i`` of type ``2^i.1^(n-2i)``, centralizers, and the
exact group orders behind orbit-stratified point counting.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

import numpy as np

from .errors import DimensionMismatch, InvariantViolation, NotNilpotent
from .ff import make_field
from .matff import BlockSpec, Mat, kernel_vectors, mul, rank


class Partition(tuple):
    """Weakly decreasing tuple of positive parts."""

    def __new__(cls, parts):
        parts = tuple(int(x) for x in parts)
        if any(x <= 0 for x in parts):
            raise ValueError(f"partition parts must be positive: {parts}")
        return super().__new__(cls, sorted(parts, reverse=True))

    @property
    def n(self):
        return sum(self)

    def transpose(self):
        if not self:
            return Partition(())
        return Partition(sum(1 for x in self if x > j) for j in range(self[0]))

    def multiplicity(self, part):
        return sum(1 for x in self if x == part)

    def is_restricted(self, p):
        return all(x <= p for x in self)

    def to_json(self):
        return list(self)

    def __str__(self):
        chunks = []
        for part in sorted(set(self), reverse=True):
            m = self.multiplicity(part)
            chunks.append(f"{part}^{m}" if m > 1 else f"{part}")
        return ".".join(chunks) if chunks else "0"

    def __repr__(self):
        return f"Partition({list(self)})"


def two_one_partition(n, i):
    """The partition 2^i.1^(n-2i)."""
    return Partition([2] * i + [1] * (n - 2 * i))


def jordan_type(x):
    """Jordan type of a nilpotent matrix from its rank sequence r_k = rk(x^k)."""
    if not x.is_square:
        raise DimensionMismatch("jordan_type needs a square matrix")
    n = x.rows
    ranks = [n]
    power = x
    while ranks[-1] > 0:
        if len(ranks) > n:
            raise NotNilpotent("matrix is not nilpotent")
        ranks.append(rank(power))
        power = mul(power, x)
    ranks += [0, 0]
    parts = []
    for k in range(1, len(ranks) - 1):
        parts += [k] * (ranks[k - 1] - 2 * ranks[k] + ranks[k + 1])
    return Partition(parts)


def e_block_spec(n, i):
    """The 3x3 block layout (i, n-2i, i) used for e_i and its centralizer."""
    if not 0 <= 2 * i <= n:
        raise ValueError(f"need 0 <= i <= n/2, got n={n}, i={i}")
    return BlockSpec.square((i, n - 2 * i, i))


@dataclass(frozen=True)
class CanonicalNilpotent:
    n: int
    i: int
    matrix: Mat

    @property
    def partition(self):
        return two_one_partition(self.n, self.i)


def canonical_e(n, i, ctx=None):
    """e_i: the identity I_i in the top-right corner of the (i, n-2i, i) layout."""
    ctx = ctx or make_field(2)
    if not 0 <= i <= n // 2:
        raise ValueError(f"i must satisfy 0 <= i <= {n // 2}, got {i}")
    spec = e_block_spec(n, i)
    return CanonicalNilpotent(n, i, spec.assemble(ctx, {(0, 2): np.eye(i, dtype=np.int64)}))


def jordan_matrix(parts, ctx=None):
    """Nilpotent Jordan normal form with blocks in the given order (ones above the diagonal)."""
    ctx = ctx or make_field(2)
    n = sum(parts)
    a = np.zeros((n, n), dtype=np.int64)
    start = 0
    for s in parts:
        for t in range(s - 1):
            a[start + t, start + t + 1] = 1
        start += s
    return Mat(ctx, a)


def commutant_operator(ctx, x):
    """Matrix of z -> zx - xz on row-major vec(z)."""
    n = x.rows
    eye = np.eye(n, dtype=np.int64)
    right = np.kron(eye, x.entries.T)  # vec(z x)
    left = np.kron(x.entries, eye)     # vec(x z)
    return ctx.sub(right, left)


def centralizer_basis(x):
    """Basis of {z : zx = xz}, the kernel of z -> zx - xz on n^2 coordinates."""
    if not x.is_square:
        raise DimensionMismatch("centralizer of a non-square matrix")
    n = x.rows
    vecs = kernel_vectors(x.ctx, commutant_operator(x.ctx, x))
    return [Mat(x.ctx, v.reshape(n, n)) for v in vecs]


def dim_centralizer(partition):
    """sum_j (lambda'_j)^2."""
    return sum(c * c for c in Partition(partition).transpose())


def gl_order(n, q):
    return q ** (n * (n - 1) // 2) * prod(q**i - 1 for i in range(1, n + 1))


def centralizer_group_order(n, i, q):
    """|Z_G(e_i)| over F_q for e_i of type 2^i.1^(n-2i)."""
    if not 0 <= i <= n // 2:
        raise ValueError(f"i must satisfy 0 <= i <= {n // 2}, got {i}")
    d = (n - i) ** 2 + i * i
    m1, m2 = n - 2 * i, i
    return q ** (d - m1 * m1 - m2 * m2) * gl_order(m1, q) * gl_order(m2, q)


def orbit_size(n, i, q):
    """|GL(n,q) . e_i| by orbit-stabilizer; exactness of the division is asserted."""
    g = gl_order(n, q)
    z = centralizer_group_order(n, i, q)
    size, rem = divmod(g, z)
    if rem:
        raise InvariantViolation(f"|GL({n},{q})| not divisible by |Z(e_{i})|", "orbit-stabilizer")
    return size


def nullcone_count(n, q):
    """Number of square-zero n x n matrices over F_q (sum of the orbit sizes)."""
    return sum(orbit_size(n, i, q) for i in range(n // 2 + 1))


def cocharacter_weights(partition):
    """Per Jordan block of size s the weights s-1, s-3, ..., 1-s, blocks in the given order."""
    out = []
    for s in partition:
        out += list(range(s - 1, -s, -2))
    return tuple(out)
