"""Dense exact matrices over a :class:`~nilcomm.ff.FieldCtx`.

``Mat`` is an immutable value: arithmetic returns new matrices. Over GF(2)
the multiplication, rank and kernel routines default to the bit-packed
path in :mod:`nilcomm.gf2`; pass ``packed=False`` to force the generic
table-driven path (both give identical answers).

Elementary matrices are 1-based: ``Mat.e(ctx, n, 1, 2)`` is
``e_12``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import batch, gf2
from .errors import DimensionMismatch, FieldError, FieldMismatch, InvariantViolation, SingularMatrix
from .ff import make_field


class Mat:
    __slots__ = ("ctx", "_a")

    def __init__(self, ctx, entries):
        a = np.array(entries, dtype=np.int64, copy=True)
        if a.ndim != 2:
            raise DimensionMismatch(f"expected a 2-d array, got shape {a.shape}")
        if a.shape[0] < 1 or a.shape[1] < 1:
            raise DimensionMismatch(f"matrix dimensions must be >= 1, got {a.shape}")
        if a.size and (a.min() < 0 or a.max() >= ctx.q):
            raise FieldError(f"entries out of range for {ctx!r}")
        a.setflags(write=False)
        self.ctx = ctx
        self._a = a

    # -- constructors --------------------------------------------------

    @classmethod
    def zeros(cls, ctx, rows, cols=None):
        return cls(ctx, np.zeros((rows, rows if cols is None else cols), dtype=np.int64))

    @classmethod
    def identity(cls, ctx, n):
        return cls(ctx, np.eye(n, dtype=np.int64))

    @classmethod
    def e(cls, ctx, n, i, j, cols=None):
        """Elementary matrix e_ij (1-based), n x n unless ``cols`` is given."""
        a = np.zeros((n, n if cols is None else cols), dtype=np.int64)
        a[i - 1, j - 1] = 1
        return cls(ctx, a)

    @classmethod
    def from_units(cls, ctx, n, pairs):
        """Sum of elementary matrices e_ij for 1-based (i, j) in ``pairs``."""
        a = np.zeros((n, n), dtype=np.int64)
        for i, j in pairs:
            a[i - 1, j - 1] = ctx.add(int(a[i - 1, j - 1]), 1)
        return cls(ctx, a)

    @classmethod
    def random(cls, ctx, rows, cols=None, rng=None):
        rng = np.random.default_rng(rng)
        return cls(ctx, rng.integers(0, ctx.q, size=(rows, rows if cols is None else cols)))

    @classmethod
    def jordan_block(cls, ctx, n):
        return cls(ctx, np.eye(n, k=1, dtype=np.int64))

    # -- basic protocol -------------------------------------------------

    @property
    def entries(self):
        return self._a

    @property
    def rows(self):
        return self._a.shape[0]

    @property
    def cols(self):
        return self._a.shape[1]

    @property
    def shape(self):
        return self._a.shape

    @property
    def is_square(self):
        return self.rows == self.cols

    def is_zero(self):
        return not self._a.any()

    def tolist(self):
        return self._a.tolist()

    def __getitem__(self, idx):
        return int(self._a[idx])

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.ctx == other.ctx
                and self.shape == other.shape and bool((self._a == other._a).all()))

    __hash__ = None

    def __repr__(self):
        return f"Mat({self.ctx!r}, {self._a.tolist()})"

    @property
    def T(self):
        return Mat(self.ctx, self._a.T)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return sub(self, other)

    def __neg__(self):
        return Mat(self.ctx, self.ctx.neg(self._a))

    def __matmul__(self, other):
        return mul(self, other)

    def __mul__(self, scalar):
        return scalar_mul(scalar, self)

    __rmul__ = __mul__

    def __pow__(self, e):
        return mat_pow(self, e)

    def to_json(self):
        return {"p": self.ctx.p, "k": self.ctx.k, "n_rows": self.rows,
                "n_cols": self.cols, "entries": self._a.tolist()}

    @classmethod
    def from_json(cls, obj):
        return matrix_from_json(obj)


def _check_pair(a, b):
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx!r} vs {b.ctx!r}")


def add(a, b):
    _check_pair(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot add {a.shape} and {b.shape}")
    return Mat(a.ctx, a.ctx.add(a.entries, b.entries))


def sub(a, b):
    _check_pair(a, b)
    if a.shape != b.shape:
        raise DimensionMismatch(f"cannot subtract {a.shape} and {b.shape}")
    return Mat(a.ctx, a.ctx.sub(a.entries, b.entries))


def scalar_mul(c, a):
    c = int(c)
    a.ctx.check(c)
    return Mat(a.ctx, a.ctx.mul(c, a.entries))


def mul(a, b, packed=None):
    _check_pair(a, b)
    if a.cols != b.rows:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    if _use_packed(a.ctx, packed):
        out = gf2.mul(gf2.pack(a.entries), gf2.pack(b.entries), a.cols)
        return Mat(a.ctx, gf2.unpack(out, b.cols))
    return Mat(a.ctx, batch.matmul(a.ctx, a.entries, b.entries))


def mat_pow(a, e):
    if not a.is_square:
        raise DimensionMismatch("power of a non-square matrix")
    if e < 0:
        return mat_pow(inverse(a), -e)
    return Mat(a.ctx, batch.matpow(a.ctx, a.entries, int(e)))


def commutator(a, b):
    """[a, b] = ab - ba."""
    return sub(mul(a, b), mul(b, a))


def _use_packed(ctx, packed):
    if packed is None:
        return ctx.q == 2
    if packed and ctx.q != 2:
        raise FieldError("packed path requires GF(2)")
    return packed


def _rref(m, packed=None):
    """(reduced rows as int array, pivot columns) for a single matrix."""
    if _use_packed(m.ctx, packed):
        red, piv = gf2.rref(gf2.pack(m.entries), m.cols)
        return gf2.unpack(red, m.cols), piv
    red, piv, rk = batch.rref(m.ctx, m.entries[None])
    return red[0], [int(c) for c in piv[0, : int(rk[0])]]


def rank(m, packed=None):
    return len(_rref(m, packed)[1])


def rank_kernel(m, packed=None):
    """Rank and a kernel basis (list of ``cols x 1`` column matrices).

    The basis is read off the reduced row echelon form: one vector per
    non-pivot column, with a 1 in that column.
    """
    ctx = m.ctx
    red, piv = _rref(m, packed)
    pset = set(piv)
    kernel = []
    for f in range(m.cols):
        if f in pset:
            continue
        v = np.zeros(m.cols, dtype=np.int64)
        v[f] = 1
        for row, pc in enumerate(piv):
            v[pc] = ctx.neg(int(red[row, f]))
        kernel.append(Mat(ctx, v[:, None]))
    return len(piv), kernel


def kernel_vectors(ctx, entries):
    """Kernel basis of a raw integer matrix as a (dim, cols) array; handles 0-row input."""
    entries = np.asarray(entries, dtype=np.int64)
    cols = entries.shape[1]
    if entries.shape[0] == 0:
        return np.eye(cols, dtype=np.int64)
    _, basis = rank_kernel(Mat(ctx, entries))
    if not basis:
        return np.zeros((0, cols), dtype=np.int64)
    return np.stack([v.entries[:, 0] for v in basis])


def column_space(m):
    """Columns of ``m`` at the pivot positions: a basis of its image."""
    _, piv = _rref(m)
    return m.entries[:, piv]


def inverse(g):
    if not g.is_square:
        raise DimensionMismatch("inverse of a non-square matrix")
    inv, ok = batch.inverse(g.ctx, g.entries[None])
    if not ok[0]:
        raise SingularMatrix("matrix is not invertible")
    return Mat(g.ctx, inv[0])


def is_invertible(g):
    return g.is_square and rank(g) == g.rows


def pth_power(m):
    """m multiplied by itself p times, p the field characteristic."""
    if not m.is_square:
        raise DimensionMismatch("p-th power of a non-square matrix")
    return mat_pow(m, m.ctx.p)


def is_restricted_nilpotent(m):
    return pth_power(m).is_zero()


def conjugate(g, x):
    """g x g^-1."""
    return mul(mul(g, x), inverse(g))


def antidiagonal(ctx, n):
    return Mat(ctx, np.fliplr(np.eye(n, dtype=np.int64)))


def theta_dual(x):
    """x -> -J x^T J^-1 with J the antidiagonal permutation (an involution)."""
    if not x.is_square:
        raise DimensionMismatch("theta_dual needs a square matrix")
    flipped = x.entries[::-1, ::-1].T
    return Mat(x.ctx, x.ctx.neg(flipped))


def block_diag(*mats):
    ctx = mats[0].ctx
    for m in mats[1:]:
        _check_pair(mats[0], m)
    r = sum(m.rows for m in mats)
    c = sum(m.cols for m in mats)
    out = np.zeros((r, c), dtype=np.int64)
    i = j = 0
    for m in mats:
        out[i: i + m.rows, j: j + m.cols] = m.entries
        i += m.rows
        j += m.cols
    return Mat(ctx, out)


@dataclass(frozen=True)
class BlockSpec:
    """Row and column partitions of a matrix into blocks.

    Zero-width parts are allowed; they describe degenerate blocks such as
    the middle block of ``e_i`` when ``n = 2i``.
    """

    row_parts: tuple
    col_parts: tuple

    def __post_init__(self):
        object.__setattr__(self, "row_parts", tuple(int(x) for x in self.row_parts))
        object.__setattr__(self, "col_parts", tuple(int(x) for x in self.col_parts))
        if min(self.row_parts + self.col_parts, default=0) < 0:
            raise DimensionMismatch("block sizes must be non-negative")

    @classmethod
    def square(cls, parts):
        return cls(tuple(parts), tuple(parts))

    @property
    def shape(self):
        return sum(self.row_parts), sum(self.col_parts)

    def _offsets(self, parts, idx):
        start = sum(parts[:idx])
        return start, start + parts[idx]

    def block(self, m, r, c):
        """Raw array view of block (r, c) (0-based block indices)."""
        arr = m.entries if isinstance(m, Mat) else np.asarray(m)
        if arr.shape != self.shape:
            raise DimensionMismatch(f"matrix {arr.shape} does not fit block layout {self.shape}")
        r0, r1 = self._offsets(self.row_parts, r)
        c0, c1 = self._offsets(self.col_parts, c)
        return arr[r0:r1, c0:c1]

    def assemble(self, ctx, blocks):
        """Build a matrix from a dict {(r, c): array-like}; missing blocks are zero."""
        out = np.zeros(self.shape, dtype=np.int64)
        for (r, c), val in blocks.items():
            r0, r1 = self._offsets(self.row_parts, r)
            c0, c1 = self._offsets(self.col_parts, c)
            val = val.entries if isinstance(val, Mat) else np.asarray(val, dtype=np.int64)
            if val.shape != (r1 - r0, c1 - c0):
                raise DimensionMismatch(f"block {(r, c)} expects {(r1 - r0, c1 - c0)}, got {val.shape}")
            out[r0:r1, c0:c1] = val
        return Mat(ctx, out)


def matrix_from_json(obj):
    """Parse the matrix interchange format, naming the offending field on error."""
    for key in ("p", "k", "n_rows", "n_cols", "entries"):
        if key not in obj:
            raise InvariantViolation(f"matrix JSON is missing field '{key}'", key)
    try:
        ctx = make_field(obj["p"], obj["k"])
    except FieldError as exc:
        raise InvariantViolation(f"field 'p'/'k': {exc}", "p") from exc
    entries = obj["entries"]
    if not isinstance(entries, list) or len(entries) != obj["n_rows"] or any(
            not isinstance(row, list) or len(row) != obj["n_cols"] for row in entries):
        raise InvariantViolation("field 'entries' does not match n_rows x n_cols", "entries")
    try:
        return Mat(ctx, entries)
    except (FieldError, DimensionMismatch) as exc:
        raise InvariantViolation(f"field 'entries': {exc}", "entries") from exc
