"""Stratum generators inside z(e_i) and representatives of the components of C.

Everything here follows the characteristic-2 conventions (unipotent
conjugators are involutions), so only p = 2 is accepted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import batch
from .enumerate import combine_basis
from .errors import DimensionMismatch, FieldError, InvariantViolation
from .matff import BlockSpec, Mat, commutator, pth_power, theta_dual
from .nilpotent import canonical_e, e_block_spec
from .pairs import CommPair, block_sum


def _require_char2(ctx):
    if ctx.p != 2:
        raise FieldError("stratum and component generators use characteristic-2 conventions")


def a_block(size, j):
    """The size x size matrix with I_j in its top-right corner (layout (j, size-2j, j))."""
    if not 0 <= 2 * j <= size:
        raise ValueError(f"need 0 <= j <= {size // 2}, got {j}")
    a = np.zeros((size, size), dtype=np.int64)
    for t in range(j):
        a[t, size - j + t] = 1
    return a


@dataclass(frozen=True)
class StratumParams:
    """Free blocks of an element (A_j B C; 0 E_l F; 0 0 A_j) of z(e_i).

    B is i x (n-2i), F is (n-2i) x i, C is i x i; ``None`` means zero.
    """

    ctx: object
    n: int
    i: int
    j: int
    l: int
    B: object = None
    F: object = None
    C: object = None

    def blocks(self):
        i, mid = self.i, self.n - 2 * self.i
        if not 0 <= 2 * self.i <= self.n:
            raise ValueError(f"need 0 <= i <= n/2, got n={self.n}, i={self.i}")
        if not 0 <= self.j <= self.i // 2:
            raise ValueError(f"need 0 <= j <= [i/2] = {self.i // 2}, got {self.j}")
        if not 0 <= self.l <= mid // 2:
            raise ValueError(f"need 0 <= l <= [(n-2i)/2] = {mid // 2}, got {self.l}")
        out = {}
        for name, shape in (("B", (i, mid)), ("F", (mid, i)), ("C", (i, i))):
            val = getattr(self, name)
            arr = np.zeros(shape, dtype=np.int64) if val is None else np.asarray(val, dtype=np.int64)
            if arr.shape != shape:
                raise DimensionMismatch(f"block {name} must be {shape}, got {arr.shape}")
            self.ctx.check(arr)
            out[name] = arr
        return out


def stratum_violation(params):
    """Name of the first failing defining equation of V_{j,l}, or None."""
    ctx = params.ctx
    blk = params.blocks()
    aj = a_block(params.i, params.j)
    el = a_block(params.n - 2 * params.i, params.l)
    mm = lambda x, y: batch.matmul(ctx, x, y)  # noqa: E731
    B, F, C = blk["B"], blk["F"], blk["C"]
    if B.size and (mm(aj, B) != mm(B, el)).any():
        return "A_j B = B E_l"
    if F.size and (mm(el, F) != mm(F, aj)).any():
        return "E_l F = F A_j"
    if C.size and (ctx.sub(mm(aj, C), mm(C, aj)) != mm(B, F)).any():
        return "[A_j,C] = BF"
    return None


def rep_stratum(params):
    """The matrix (A_j B C; 0 E_l F; 0 0 A_j) after checking the stratum equations."""
    ctx = params.ctx
    _require_char2(ctx)
    bad = stratum_violation(params)
    if bad is not None:
        raise InvariantViolation(f"stratum equation {bad} fails", bad)
    blk = params.blocks()
    n, i = params.n, params.i
    aj = a_block(i, params.j)
    spec = e_block_spec(n, i)
    x = spec.assemble(ctx, {(0, 0): aj, (0, 1): blk["B"], (0, 2): blk["C"],
                            (1, 1): a_block(n - 2 * i, params.l), (1, 2): blk["F"],
                            (2, 2): aj})
    e = canonical_e(n, i, ctx).matrix
    if not commutator(e, x).is_zero() or not pth_power(x).is_zero():
        raise InvariantViolation("output left z(e_i) or the nullcone", "x in z(e) and x^2 = 0")
    return x


def _upper_pattern_basis(rows, cols):
    """Basis of the matrices (P11 P12 P13; 0 P22 P23; 0 0 P11) in the layouts (rows) x (cols)."""
    r1, r2, r3 = rows
    c1, c2, c3 = cols
    shape = (sum(rows), sum(cols))
    out = []
    for r in range(r1):
        for c in range(shape[1]):
            m = np.zeros(shape, dtype=np.int64)
            m[r, c] = 1
            if c < c1:
                m[r1 + r2 + r, c1 + c2 + c] = 1  # P33 = P11
            out.append(m)
    for r in range(r1, r1 + r2):
        for c in range(c1, shape[1]):
            m = np.zeros(shape, dtype=np.int64)
            m[r, c] = 1
            out.append(m)
    return np.array(out, dtype=np.int64).reshape((len(out),) + shape)


def random_stratum_batch(ctx, n, i, j, l, size, rng):
    """``size`` random points of V_{j,l} as an array (size, n, n).

    B is drawn uniformly from the shape forced by A_j B = B E_l; then (F, C)
    is a uniform solution of the linear system E_l F = F A_j, [A_j,C] = BF.
    """
    _require_char2(ctx)
    mid = n - 2 * i
    rows_b = (j, i - 2 * j, j)
    cols_b = (l, mid - 2 * l, l)
    bb = _upper_pattern_basis(rows_b, cols_b)
    fb = _upper_pattern_basis(cols_b, rows_b)
    B = np.zeros((size, i, mid), dtype=np.int64)
    if len(bb):
        B = combine_basis(ctx, rng.integers(0, ctx.q, size=(size, len(bb))), bb)
    C = np.zeros((size, i, i), dtype=np.int64)
    F = np.zeros((size, mid, i), dtype=np.int64)
    aj = a_block(i, j)
    if i:
        eye = np.eye(i, dtype=np.int64)
        # vec([A_j, C]) = (A_j (x) I - I (x) A_j^T) vec(C), row-major
        op = ctx.sub(np.kron(aj, eye), np.kron(eye, aj.T))
        cols = [np.broadcast_to(op, (size,) + op.shape)]
        cols += [ctx.neg(batch.matmul(ctx, B, f)).reshape(size, i * i, 1) for f in fb]
        lhs = np.concatenate(cols, axis=2)
        sol, ok = batch.solve_sample(ctx, lhs, np.zeros((size, i * i), np.int64), rng)
        assert ok.all()  # homogeneous
        C = sol[:, :i * i].reshape(size, i, i)
        if len(fb):
            F = combine_basis(ctx, sol[:, i * i:], fb)
    x = np.zeros((size, n, n), dtype=np.int64)
    lo, hi = slice(0, i), slice(n - i, n)
    md = slice(i, n - i)
    x[:, lo, lo] = aj
    x[:, hi, hi] = aj
    x[:, md, md] = a_block(mid, l)
    x[:, lo, md] = B
    x[:, lo, hi] = C
    x[:, md, hi] = F
    return x


def random_stratum_params(ctx, n, i, j, l, rng):
    """One random point of V_{j,l} as :class:`StratumParams`."""
    x = random_stratum_batch(ctx, n, i, j, l, 1, rng)[0]
    lo, md, hi = slice(0, i), slice(i, n - i), slice(n - i, n)
    return StratumParams(ctx, n, i, j, l, x[lo, md], x[md, hi], x[lo, hi])


# -- components ------------------------------------------------------------

KINDS = ("X_j", "X_j_plus", "X_j_minus", "X_half")


@dataclass(frozen=True)
class ComponentId:
    """Label of an irreducible component of C for gl(n), p = 2."""

    n: int
    kind: str
    j: int = 0

    def __post_init__(self):
        n, j = self.n, self.j
        m = n // 2
        if self.kind not in KINDS:
            raise ValueError(f"unknown component kind {self.kind!r}; expected one of {KINDS}")
        if self.kind == "X_j":
            if n % 2 or not 0 <= j <= m // 2:
                raise ValueError(f"X_j needs even n and 0 <= j <= {m // 2}, got n={n}, j={j}")
        elif self.kind == "X_half":
            if n % 2 == 0 or m % 2:
                raise ValueError(f"X_half needs n = 2m+1 with m even, got n={n}")
        else:
            if n % 2 == 0 or not (0 <= j and 2 * j < m):
                raise ValueError(f"{self.kind} needs odd n and 0 <= j < m/2, got n={n}, j={j}")

    def __str__(self):
        if self.kind == "X_half":
            return f"X_{self.n // 4}(n={self.n})"
        sign = {"X_j": "", "X_j_plus": "+", "X_j_minus": "-"}[self.kind]
        return f"X_{self.j}{sign}(n={self.n})"

    @classmethod
    def all_for(cls, n):
        m = n // 2
        if n % 2 == 0:
            return [cls(n, "X_j", j) for j in range(m // 2 + 1)]
        out = []
        for j in range((m + 1) // 2):
            out += [cls(n, "X_j_plus", j), cls(n, "X_j_minus", j)]
        if m % 2 == 0:
            out.append(cls(n, "X_half"))
        return out


def w_pair(ctx):
    """(e12 + e34, e13 + e24): the free module of rank one."""
    return CommPair(Mat.from_units(ctx, 4, [(1, 2), (3, 4)]), Mat.from_units(ctx, 4, [(1, 3), (2, 4)]))


def triv_pair(ctx):
    z = Mat.zeros(ctx, 1)
    return CommPair(z, z)


def x0_pair(ctx, n):
    """(e_m, (0 D; 0 0)) with D diagonal, entries the field elements 0, 1, ..., m-1."""
    _require_char2(ctx)
    if n % 2:
        raise ValueError("X_0 lives in even dimension")
    m = n // 2
    if m > ctx.q:
        raise InvariantViolation(f"GF({ctx.q}) has fewer than {m} distinct diagonal values",
                                 "distinct diagonal entries")
    spec = BlockSpec.square((m, m))
    b = spec.assemble(ctx, {(0, 1): np.diag(np.arange(m, dtype=np.int64))})
    return CommPair(canonical_e(n, m, ctx).matrix, b)


def x0_plus_pair(ctx, n):
    """(e_m, e_{1,m+1} + ... + e_{m,2m}) for n = 2m+1."""
    _require_char2(ctx)
    if n % 2 == 0:
        raise ValueError("X_0^+ lives in odd dimension")
    m = n // 2
    return CommPair(canonical_e(n, m, ctx).matrix, Mat.from_units(ctx, n, [(a, m + a) for a in range(1, m + 1)]))


def x0_minus_pair(ctx, n):
    """theta(X_0^+) with theta(x) = -J x^T J; the first coordinate is again e_m (p = 2)."""
    a, b = x0_plus_pair(ctx, n)
    return CommPair(theta_dual(a), theta_dual(b))


def generic_component_rep(cid, ctx):
    """A pair whose orbit is dense in the component ``cid``."""
    _require_char2(ctx)
    n, j = cid.n, cid.j
    if cid.kind == "X_half":
        return block_sum(*([w_pair(ctx)] * (n // 4)), triv_pair(ctx))
    rest = n - 4 * j
    tail = {"X_j": x0_pair, "X_j_plus": x0_plus_pair, "X_j_minus": x0_minus_pair}[cid.kind]
    parts = [w_pair(ctx)] * j
    if rest:
        parts.append(tail(ctx, rest))
    return block_sum(*parts)


__all__ = ["StratumParams", "rep_stratum", "stratum_violation", "random_stratum_params",
           "random_stratum_batch", "a_block",
           "ComponentId", "generic_component_rep", "w_pair", "triv_pair", "x0_pair",
           "x0_plus_pair", "x0_minus_pair"]
