"""Vectorised GF(q) kernels on integer arrays of shape (..., rows, cols).

These are the array-level workhorses behind :mod:`nilcomm.matff` and the
enumeration code. Everything here is exact; elimination always pivots on
the first nonzero entry at or below the current row.
"""

from __future__ import annotations

import numpy as np

from . import gf2


def matmul(ctx, a, b):
    a = np.asarray(a, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64)
    if ctx.k == 1:
        return np.matmul(a, b) % ctx.p
    inner = a.shape[-1]
    out = None
    for j in range(inner):
        term = ctx.mul(a[..., :, j, None], b[..., None, j, :])
        out = term if out is None else ctx.add(out, term)
    if out is None:
        return np.zeros(a.shape[:-1] + b.shape[-1:], dtype=np.int64)
    return out


def add(ctx, a, b):
    return ctx.add(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))


def scale(ctx, c, a):
    """Multiply each matrix in ``a`` by the scalar(s) ``c`` (broadcast over the batch)."""
    c = np.asarray(c, dtype=np.int64)
    a = np.asarray(a, dtype=np.int64)
    if c.ndim:
        c = c.reshape(c.shape + (1, 1))
    return ctx.mul(c, a)


def matpow(ctx, a, e):
    a = np.asarray(a, dtype=np.int64)
    n = a.shape[-1]
    result = np.broadcast_to(np.eye(n, dtype=np.int64), a.shape).copy()
    base = a
    while e:
        if e & 1:
            result = matmul(ctx, result, base)
        e >>= 1
        if e:
            base = matmul(ctx, base, base)
    return result


def pth_power_is_zero(ctx, mats):
    """Boolean mask: which square matrices satisfy x^p = 0."""
    mats = np.asarray(mats, dtype=np.int64)
    n = mats.shape[-1]
    if ctx.q == 2 and n <= gf2.WORD:
        flat = mats.reshape((-1, n, n))
        sq = gf2.bmul(*(2 * (gf2.bpack(flat),)), n)
        return (sq == 0).all(axis=-1).reshape(mats.shape[:-2])
    power = matpow(ctx, mats, ctx.p)
    return (power == 0).all(axis=(-2, -1))


def rref(ctx, m, ncols=None):
    """Batched reduced row echelon form.

    ``m`` has shape (N, r, c). Pivots are searched only in the first
    ``ncols`` columns (default all), which lets callers reduce augmented
    systems. Returns ``(R, pivots, rank)`` where ``pivots[b, row]`` is the
    pivot column of that row or -1.
    """
    m = np.array(m, dtype=np.int64, copy=True)
    n_batch, r, c = m.shape
    ncols = c if ncols is None else ncols
    rank = np.zeros(n_batch, dtype=np.int64)
    pivots = np.full((n_batch, r), -1, dtype=np.int64)
    ridx = np.arange(r)
    for col in range(ncols):
        if r == 0 or (rank == r).all():
            break
        cand = (m[:, :, col] != 0) & (ridx[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        ar = np.arange(b.size)
        piv = np.argmax(cand[b], axis=1)
        tgt = rank[b]
        sub = m[b]
        prow = sub[ar, piv].copy()
        sub[ar, piv] = sub[ar, tgt]
        prow = ctx.mul(prow, ctx.inv(prow[:, col])[:, None])
        sub[ar, tgt] = prow
        factors = sub[:, :, col].copy()
        factors[ar, tgt] = 0
        sub = ctx.sub(sub, ctx.mul(factors[:, :, None], prow[:, None, :]))
        m[b] = sub
        pivots[b, tgt] = col
        rank[b] += 1
    return m, pivots, rank


def rank(ctx, m):
    m = np.asarray(m, dtype=np.int64)
    shape = m.shape
    flat = m.reshape((-1,) + shape[-2:])
    if ctx.q == 2 and shape[-1] <= gf2.WORD:
        out = gf2.brank(gf2.bpack(flat), shape[-1])
    else:
        out = rref(ctx, flat)[2]
    return out.reshape(shape[:-2])


def inverse(ctx, a):
    """Batched inverse. Returns ``(inv, ok)``; rows of ``inv`` where ``ok`` is False are garbage."""
    a = np.asarray(a, dtype=np.int64)
    n_batch, n, _ = a.shape
    eye = np.broadcast_to(np.eye(n, dtype=np.int64), a.shape)
    r, _, rk = rref(ctx, np.concatenate([a, eye], axis=2), ncols=n)
    return r[:, :, n:], rk == n


def solve_sample(ctx, lhs, rhs, rng):
    """Random solutions of the affine systems ``lhs[b] @ x = rhs[b]``.

    Returns ``(x, ok)`` where ``ok`` marks consistent systems; for those
    ``x[b]`` is uniformly distributed over the solution set.
    """
    lhs = np.asarray(lhs, dtype=np.int64)
    n_batch, r, c = lhs.shape
    aug = np.concatenate([lhs, np.asarray(rhs, dtype=np.int64)[:, :, None]], axis=2)
    red, piv, _ = rref(ctx, aug, ncols=c)
    ok = ~((piv < 0) & (red[:, :, c] != 0)).any(axis=1)
    x = rng.integers(0, ctx.q, size=(n_batch, c), dtype=np.int64)
    for row in range(r):
        pc = piv[:, row]
        live = pc >= 0
        if not live.any():
            continue
        b = np.flatnonzero(live)
        coeff = red[b, row, :c]
        s = ctx.sum(ctx.mul(coeff, x[b]), axis=1)
        cur = x[b, pc[b]]
        # row reads x[pc] + sum_{free} coeff*x = rhs
        others = ctx.sub(s, cur)
        x[b, pc[b]] = ctx.sub(red[b, row, c], others)
    return x, ok


def affine_nullity(ctx, lhs, rhs):
    """For each system ``lhs[b] @ x = rhs[b]``: (consistent?, kernel dimension)."""
    lhs = np.asarray(lhs, dtype=np.int64)
    c = lhs.shape[2]
    aug = np.concatenate([lhs, np.asarray(rhs, dtype=np.int64)[:, :, None]], axis=2)
    red, piv, rk = rref(ctx, aug, ncols=c)
    ok = ~((piv < 0) & (red[:, :, c] != 0)).any(axis=1)
    return ok, c - rk
