"""Bit-packed GF(2) matrices.

A matrix with ``c`` columns is stored one row per ``ceil(c / 64)`` uint64
words, bit ``j`` of word ``w`` holding column ``64*w + j``. The batched
helpers (``bmul``, ``brank``, ``bsquare_is_zero``) assume single-word rows,
which covers every matrix size enumerated in practice (n <= 64).

These routines are drop-in replacements for the generic GF(q) kernels when
``q == 2``; both paths pivot on the first nonzero entry, so reduced forms
and kernel bases agree exactly.
"""

from __future__ import annotations

import numpy as np

WORD = 64
_ONE = np.uint64(1)


def n_words(cols):
    return max(1, -(-cols // WORD))


def pack(entries):
    """Pack a 0/1 array of shape (..., r, c) into (..., r, words) uint64."""
    arr = np.asarray(entries).astype(np.uint64) & _ONE
    c = arr.shape[-1]
    words = n_words(c)
    out = np.zeros(arr.shape[:-1] + (words,), dtype=np.uint64)
    for j in range(c):
        out[..., j // WORD] |= arr[..., j] << np.uint64(j % WORD)
    return out


def unpack(packed, cols):
    packed = np.asarray(packed, dtype=np.uint64)
    out = np.zeros(packed.shape[:-1] + (cols,), dtype=np.int64)
    for j in range(cols):
        out[..., j] = ((packed[..., j // WORD] >> np.uint64(j % WORD)) & _ONE).astype(np.int64)
    return out


def _bit(packed, j):
    return (packed[..., j // WORD] >> np.uint64(j % WORD)) & _ONE


def mul(a, b, inner):
    """Product of packed matrices a (r x inner) and b (inner x c)."""
    a = np.asarray(a, dtype=np.uint64)
    b = np.asarray(b, dtype=np.uint64)
    out = np.zeros((a.shape[0], b.shape[1]), dtype=np.uint64)
    for k in range(inner):
        sel = _bit(a, k).astype(bool)
        out[sel] ^= b[k]
    return out


def rref(packed, cols):
    """Reduced row echelon form; returns (rows, pivot_columns)."""
    m = np.array(packed, dtype=np.uint64, copy=True)
    r = m.shape[0]
    pivots = []
    row = 0
    for col in range(cols):
        if row == r:
            break
        bits = _bit(m, col).astype(bool)
        cand = np.flatnonzero(bits[row:])
        if cand.size == 0:
            continue
        piv = row + int(cand[0])
        if piv != row:
            m[[row, piv]] = m[[piv, row]]
        bits = _bit(m, col).astype(bool)
        bits[row] = False
        m[bits] ^= m[row]
        pivots.append(col)
        row += 1
    return m, pivots


def rank(packed, cols):
    return len(rref(packed, cols)[1])


def kernel(packed, cols):
    """Kernel basis as a (dim, cols) 0/1 int array, one vector per free column."""
    m, pivots = rref(packed, cols)
    dense = unpack(m[: len(pivots)], cols)
    free = [c for c in range(cols) if c not in set(pivots)]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for t, f in enumerate(free):
        basis[t, f] = 1
        for k, pc in enumerate(pivots):
            basis[t, pc] = dense[k, f]
    return basis


# -- batched, single-word rows -------------------------------------------

def bpack(entries):
    """(N, r, c) 0/1 array with c <= 64 -> (N, r) uint64."""
    return pack(entries)[..., 0]


def bunpack(rows, cols):
    return unpack(np.asarray(rows)[..., None], cols)


def bmul(a, b, inner):
    """Batched product; a is (N, r) rows, b is (N, inner) rows."""
    out = np.zeros_like(a)
    for k in range(inner):
        bit = (a >> np.uint64(k)) & _ONE
        out ^= bit * b[:, k: k + 1]
    return out


def bpow(a, e, n):
    result = None
    base = a
    while e:
        if e & 1:
            result = base if result is None else bmul(result, base, n)
        e >>= 1
        if e:
            base = bmul(base, base, n)
    return result


def brank(rows, cols):
    """Ranks of a batch of packed matrices, shape (N, r) -> (N,)."""
    m = np.array(rows, dtype=np.uint64, copy=True)
    n_batch, r = m.shape
    rank = np.zeros(n_batch, dtype=np.int64)
    ridx = np.arange(r)
    for col in range(cols):
        bits = ((m >> np.uint64(col)) & _ONE).astype(bool)
        cand = bits & (ridx[None, :] >= rank[:, None])
        has = cand.any(axis=1)
        if not has.any():
            continue
        b = np.flatnonzero(has)
        piv = np.argmax(cand[b], axis=1)
        prow = m[b, piv]
        # clear the column from every other candidate row below the rank line,
        # then move the pivot row into position `rank`
        kill = cand[b].copy()
        kill[np.arange(b.size), piv] = False
        sub = m[b]
        sub[kill] ^= np.broadcast_to(prow[:, None], sub.shape)[kill]
        tgt = rank[b]
        tmp = sub[np.arange(b.size), tgt].copy()
        sub[np.arange(b.size), tgt] = prow
        sub[np.arange(b.size), piv] = np.where(piv == tgt, prow, tmp)
        m[b] = sub
        rank[b] += 1
        if (rank == r).all():
            break
    return rank
