"""Modules for k[X,Y]/(X^2, Y^2) over GF(2^k), i.e. points of C read as modules.

Decomposition is certified by exhaustive idempotent search in End(M) when
that is affordable (no nontrivial idempotent means indecomposable), with
Fitting splitting as a randomized fallback whose output is flagged
uncertified.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import batch
from .enumerate import FirstWhere, combine_basis, enumerate_affine
from .errors import DimensionMismatch, FieldError, FieldMismatch, InvariantViolation
from .matff import Mat, block_diag, column_space, inverse, kernel_vectors, mul, rank
from .pairs import CommPair

IDEMPOTENT_BUDGET = 2**20
FITTING_TRIALS = 200


class LambdaModule:
    """An n-dimensional module given by commuting square-zero actions X, Y (p = 2)."""

    __slots__ = ("X", "Y")

    def __init__(self, X, Y):
        pair = CommPair(X, Y)
        if pair.ctx.p != 2:
            raise FieldError("module semantics here are for characteristic 2")
        self.X, self.Y = pair.A, pair.B

    @classmethod
    def from_pair(cls, pair):
        return cls(pair.A, pair.B)

    @classmethod
    def from_arrays(cls, ctx, X, Y):
        return cls(Mat(ctx, X), Mat(ctx, Y))

    def to_pair(self):
        return CommPair(self.X, self.Y)

    @property
    def ctx(self):
        return self.X.ctx

    @property
    def n(self):
        return self.X.rows

    def conjugate(self, g, g_inv=None):
        g_inv = inverse(g) if g_inv is None else g_inv
        return LambdaModule(g @ self.X @ g_inv, g @ self.Y @ g_inv)

    def __eq__(self, other):
        return isinstance(other, LambdaModule) and self.X == other.X and self.Y == other.Y

    __hash__ = None

    def __repr__(self):
        return f"LambdaModule(X={self.X.tolist()}, Y={self.Y.tolist()}, {self.ctx!r})"


def direct_sum(*mods):
    return LambdaModule(block_diag(*(m.X for m in mods)), block_diag(*(m.Y for m in mods)))


def dualize(m):
    """M^*: transposed actions ((1+X)^-1 = 1+X, so no inverse is needed)."""
    return LambdaModule(m.X.T, m.Y.T)


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    rkX: int
    rkY: int
    rkXY: int
    rkXplusY: int
    dimRad: int
    dimSoc: int
    loewyLength: int
    endDim: int

    def to_json(self):
        return dict(self.__dict__)


def _loewy_length(m):
    ctx = m.ctx
    n = m.n
    span = np.eye(n, dtype=np.int64)
    length = 0
    while span.shape[1]:
        length += 1
        nxt = np.concatenate([batch.matmul(ctx, m.X.entries, span),
                              batch.matmul(ctx, m.Y.entries, span)], axis=1)
        span = column_space(Mat(ctx, nxt)) if nxt.any() else np.zeros((n, 0), np.int64)
    return length


def _intertwiner_op(ctx, pairs):
    """Rows of the linear map g -> (g x_src - x_dst g) for each (x_src, x_dst), row-major vec(g)."""
    blocks = []
    for src, dst in pairs:
        right = np.kron(np.eye(dst.rows, dtype=np.int64), src.entries.T)
        left = np.kron(dst.entries, np.eye(src.rows, dtype=np.int64))
        blocks.append(ctx.sub(right, left))
    return np.concatenate(blocks, axis=0)


def hom_basis(src, dst):
    """Basis of Hom(src, dst): maps g (dst.n x src.n) with g X_src = X_dst g, same for Y."""
    if src.ctx != dst.ctx:
        raise FieldMismatch(f"{src.ctx!r} vs {dst.ctx!r}")
    ctx = src.ctx
    op = _intertwiner_op(ctx, [(src.X, dst.X), (src.Y, dst.Y)])
    return [Mat(ctx, v.reshape(dst.n, src.n)) for v in kernel_vectors(ctx, op)]


def end_basis(m):
    return hom_basis(m, m)


def fingerprint(m):
    ctx = m.ctx
    X, Y = m.X, m.Y
    n = m.n
    xy = np.concatenate([X.entries, Y.entries], axis=1)
    x_over_y = np.concatenate([X.entries, Y.entries], axis=0)
    return Fingerprint(
        dim=n,
        rkX=rank(X),
        rkY=rank(Y),
        rkXY=rank(mul(X, Y)),
        rkXplusY=rank(X + Y),
        dimRad=rank(Mat(ctx, xy)),
        dimSoc=n - rank(Mat(ctx, x_over_y)),
        loewyLength=_loewy_length(m),
        endDim=len(end_basis(m)),
    )


# -- decomposition ---------------------------------------------------------

@dataclass
class Summand:
    module: LambdaModule
    certified: bool
    embedding: Mat  # n x d, columns span the summand inside the parent

    @property
    def n(self):
        return self.module.n


def _split(m, left, right):
    """Restrict to complementary submodules spanned by the columns of ``left`` and ``right``."""
    ctx = m.ctx
    basis = Mat(ctx, np.concatenate([left.entries, right.entries], axis=1))
    inv = inverse(basis)
    x2 = inv @ m.X @ basis
    y2 = inv @ m.Y @ basis
    r = left.cols
    off = np.concatenate([x2.entries[:r, r:], x2.entries[r:, :r].T,
                          y2.entries[:r, r:], y2.entries[r:, :r].T], axis=None)
    if off.any():
        raise InvariantViolation("split subspaces are not complementary submodules", "invariance")
    part = lambda a, s: Mat(ctx, a.entries[s, s])  # noqa: E731
    lo, hi = slice(0, r), slice(r, m.n)
    return (LambdaModule(part(x2, lo), part(y2, lo)), left), (LambdaModule(part(x2, hi), part(y2, hi)), right)


def _find_idempotent(m, ends, budget):
    ctx = m.ctx
    n = m.n
    eye = np.eye(n, dtype=np.int64)

    def nontrivial_idempotent(ctx_, mats):
        sq = batch.matmul(ctx_, mats, mats)
        return ((sq == mats).all(axis=(1, 2)) & mats.any(axis=(1, 2))
                & ~(mats == eye).all(axis=(1, 2)))

    hit = enumerate_affine(ends, ctx, FirstWhere(nontrivial_idempotent), budget=budget)
    if hit is None:
        return None
    _, coeffs = hit
    arr = np.stack([e.entries for e in ends])
    return Mat(ctx, ctx.sum(ctx.mul(coeffs[:, None, None], arr), axis=0))


def _fitting_split(m, ends, rng, trials):
    ctx = m.ctx
    n = m.n
    power = 1 << max(0, (n - 1).bit_length())  # 2^ceil(log2 n) >= n
    arr = np.stack([e.entries for e in ends])
    cands = list(arr)
    for _ in range(trials):
        c = rng.integers(0, ctx.q, size=len(ends))
        cands.append(ctx.sum(ctx.mul(c[:, None, None], arr), axis=0))
    for phi in cands:
        f = Mat(ctx, batch.matpow(ctx, phi[None], power)[0])
        r = rank(f)
        if 0 < r < n:
            img = Mat(ctx, column_space(f))
            ker = Mat(ctx, kernel_vectors(ctx, f.entries).T)
            return img, ker
    return None


def decompose(m, *, budget=IDEMPOTENT_BUDGET, trials=FITTING_TRIALS, seed=0):
    """Direct summands of ``m`` as :class:`Summand` records, dims summing to n.

    A summand is ``certified`` when exhaustive search found no nontrivial
    idempotent in its endomorphism ring. Fitting splits are always genuine
    direct-sum splits; only the final "no further split" verdict can be
    uncertified.
    """
    rng = np.random.default_rng(seed)
    ctx = m.ctx
    out = []
    stack = [(m, Mat.identity(ctx, m.n))]
    while stack:
        mod, emb = stack.pop()
        ends = end_basis(mod)
        if ctx.q ** len(ends) <= budget:
            eps = _find_idempotent(mod, ends, budget)
            if eps is None:
                out.append(Summand(mod, True, emb))
                continue
            one = Mat.identity(ctx, mod.n)
            parts = Mat(ctx, column_space(eps)), Mat(ctx, column_space(one - eps))
        else:
            parts = _fitting_split(mod, ends, rng, trials)
            if parts is None:
                out.append(Summand(mod, False, emb))
                continue
        (ma, ea), (mb, eb) = _split(mod, *parts)
        # push in reverse so the first part is processed first
        stack.append((mb, emb @ eb))
        stack.append((ma, emb @ ea))
    return out


# -- classification --------------------------------------------------------

W_FINGERPRINT = Fingerprint(4, 2, 2, 1, 2, 3, 1, 3, 4)


@dataclass(frozen=True)
class IndecClass:
    tag: str  # TRIV, U, W, ZPLUS, ZMINUS, OTHER
    dim: int
    parameter: object = None  # (a, b) for U
    fingerprint: Fingerprint = None

    def __str__(self):
        if self.tag == "U":
            return f"U({self.parameter[0]}:{self.parameter[1]})"
        if self.tag in ("ZPLUS", "ZMINUS"):
            return f"{self.tag}({self.dim})"
        return self.tag


def _u_parameter(m):
    ctx = m.ctx
    x, y = m.X.entries, m.Y.entries
    nz = np.flatnonzero((x != 0) | (y != 0))
    if nz.size == 0:
        return None
    a, b = int(x.flat[nz[0]]), int(y.flat[nz[0]])
    if (ctx.mul(b, x) != ctx.mul(a, y)).any():
        return None
    s = ctx.inv(a if a else b)
    return int(ctx.mul(a, s)), int(ctx.mul(b, s))


def classify_indec(m, certified=True):
    """Name a certified-indecomposable module (a :class:`Summand` or a module plus flag)."""
    if isinstance(m, Summand):
        m, certified = m.module, m.certified
    if not certified:
        raise InvariantViolation("classify_indec needs a certified indecomposable", "certified")
    fp = fingerprint(m)
    n = m.n
    if n == 1:
        return IndecClass("TRIV", 1, None, fp)
    if n == 2:
        par = _u_parameter(m)
        if par is not None:
            return IndecClass("U", 2, par, fp)
    if n == 4 and fp == W_FINGERPRINT:
        return IndecClass("W", 4, None, fp)
    if n % 2 == 1 and n > 1:
        k = n // 2
        if (fp.rkX, fp.rkY, fp.rkXY) == (k, k, 0):
            if fp.dimRad == k and fp.dimSoc == k:
                return IndecClass("ZPLUS", n, None, fp)
            if fp.dimRad == k + 1 and fp.dimSoc == k + 1:
                return IndecClass("ZMINUS", n, None, fp)
    return IndecClass("OTHER", n, None, fp)


def decomposition_report(summands):
    out = []
    for s in summands:
        fp = fingerprint(s.module)
        if s.certified:
            cls = classify_indec(s)
            tag, par = cls.tag, (list(cls.parameter) if cls.parameter else None)
        else:
            tag, par = "UNCERTIFIED", None
        out.append({"dim": s.n, "class_tag": tag, "parameter": par,
                    "certified": s.certified, "fingerprint": fp.to_json()})
    return out


# -- isomorphism -----------------------------------------------------------

@dataclass(frozen=True)
class IsoResult:
    isomorphic: bool
    certain: bool
    hom_dim: int
    witness: Mat = None

    def __bool__(self):
        return self.isomorphic


def iso_test(a, b, *, budget=IDEMPOTENT_BUDGET, samples=2000, seed=0):
    """Is there an invertible g with g X_a = X_b g and g Y_a = Y_b g?

    Exhaustive over Hom(a, b) when q^dim fits in ``budget``; otherwise
    random elements are tried and a negative answer is marked uncertain.
    """
    if a.ctx != b.ctx:
        raise FieldMismatch(f"{a.ctx!r} vs {b.ctx!r}")
    if a.n != b.n:
        raise DimensionMismatch(f"modules of dimension {a.n} and {b.n}")
    ctx = a.ctx
    n = a.n
    hb = hom_basis(a, b)
    h = len(hb)
    if not hb:
        return IsoResult(False, True, 0)

    def invertible(ctx_, mats):
        return batch.rank(ctx_, mats) == n

    arr = np.stack([g.entries for g in hb])
    if ctx.q ** h <= budget:
        hit = enumerate_affine(hb, ctx, FirstWhere(invertible), budget=budget)
        if hit is None:
            return IsoResult(False, True, h)
        coeffs = hit[1]
        return IsoResult(True, True, h, Mat(ctx, ctx.sum(ctx.mul(coeffs[:, None, None], arr), axis=0)))
    rng = np.random.default_rng(seed)
    coeffs = rng.integers(0, ctx.q, size=(samples, h))
    mats = combine_basis(ctx, coeffs, arr)
    ok = np.flatnonzero(invertible(ctx, mats))
    if ok.size:
        return IsoResult(True, True, h, Mat(ctx, mats[ok[0]]))
    return IsoResult(False, False, h)


__all__ = ["LambdaModule", "Fingerprint", "fingerprint", "end_basis", "hom_basis", "decompose",
           "Summand", "IndecClass", "classify_indec", "dualize", "direct_sum", "iso_test",
           "IsoResult", "decomposition_report", "IDEMPOTENT_BUDGET", "FITTING_TRIALS"]
