"""Exhaustive enumeration of F_q-linear spans.

:func:`enumerate_affine` walks every coefficient vector of a basis in
lexicographic order (index ``sum(c_j * q**j)``, so the first coefficient
varies fastest) and feeds the resulting matrices to a visitor in chunks.
Visitors are commutative-associative aggregators, so splitting the index
range across worker processes cannot change the result.
"""

from __future__ import annotations

import multiprocessing
from concurrent.futures import ProcessPoolExecutor

import numpy as np

from . import batch
from .errors import BudgetExceeded, DimensionMismatch

DEFAULT_BUDGET = 2**34
DEFAULT_CHUNK = 2**15


class Visitor:
    """Base aggregator; subclasses override :meth:`visit` and usually :meth:`combine`."""

    def initial(self):
        return 0

    def visit(self, ctx, coeffs, mats, offset):
        raise NotImplementedError

    def combine(self, a, b):
        return a + b

    def saturated(self, acc):
        """Return True to stop early; only for aggregates that can no longer change."""
        return False


class CountAll(Visitor):
    def visit(self, ctx, coeffs, mats, offset):
        return int(mats.shape[0])


class CountWhere(Visitor):
    """Count matrices for which ``predicate(ctx, mats)`` (a boolean mask) holds."""

    def __init__(self, predicate):
        self.predicate = predicate

    def visit(self, ctx, coeffs, mats, offset):
        return int(np.count_nonzero(self.predicate(ctx, mats)))


class CountRestrictedNilpotent(Visitor):
    def visit(self, ctx, coeffs, mats, offset):
        return int(np.count_nonzero(batch.pth_power_is_zero(ctx, mats)))


class MaxRankRestrictedNilpotent(Visitor):
    """Largest rank among restricted-nilpotent matrices; saturates at ``bound``."""

    def __init__(self, bound=None):
        self.bound = bound

    def initial(self):
        return -1

    def visit(self, ctx, coeffs, mats, offset):
        mask = batch.pth_power_is_zero(ctx, mats)
        if not mask.any():
            return -1
        return int(batch.rank(ctx, mats[mask]).max())

    def combine(self, a, b):
        return max(a, b)

    def saturated(self, acc):
        return self.bound is not None and acc >= self.bound


class FirstWhere(Visitor):
    """Lowest enumeration index whose matrix satisfies ``predicate``.

    The aggregate is ``None`` or ``(index, coeffs)``.
    """

    def __init__(self, predicate):
        self.predicate = predicate

    def initial(self):
        return None

    def visit(self, ctx, coeffs, mats, offset):
        mask = self.predicate(ctx, mats)
        hits = np.flatnonzero(mask)
        if hits.size == 0:
            return None
        h = int(hits[0])
        return offset + h, coeffs[h].copy()

    def combine(self, a, b):
        if a is None:
            return b
        if b is None:
            return a
        return a if a[0] <= b[0] else b

    def saturated(self, acc):
        return acc is not None


def _basis_array(basis, shape):
    if isinstance(basis, np.ndarray):
        return np.asarray(basis, dtype=np.int64)
    mats = list(basis)
    if not mats:
        if shape is None:
            raise DimensionMismatch("empty basis needs an explicit shape")
        return np.zeros((0,) + tuple(shape), dtype=np.int64)
    first = mats[0].shape
    for m in mats:
        if m.shape != first:
            raise DimensionMismatch("basis elements must share dimensions")
    return np.stack([m.entries for m in mats])


def index_to_coeffs(q, d, idx):
    idx = np.asarray(idx, dtype=np.int64)
    return np.stack([(idx // q**j) % q for j in range(d)], axis=-1) if d else \
        np.zeros(idx.shape + (0,), dtype=np.int64)


def combine_basis(ctx, coeffs, basis_arr):
    """Matrices sum_j coeffs[:, j] * basis[j] for a batch of coefficient rows."""
    n_batch = coeffs.shape[0]
    d, r, c = basis_arr.shape
    if d == 0:
        return np.zeros((n_batch, r, c), dtype=np.int64)
    if ctx.k == 1:
        return ((coeffs @ basis_arr.reshape(d, r * c)) % ctx.p).reshape(n_batch, r, c)
    acc = np.zeros((n_batch, r, c), dtype=np.int64)
    for j in range(d):
        acc = ctx.add(acc, ctx.mul(coeffs[:, j, None, None], basis_arr[j][None]))
    return acc


def _run_range(basis_arr, ctx, visitor, lo, hi, chunk):
    acc = visitor.initial()
    d = basis_arr.shape[0]
    for s in range(lo, hi, chunk):
        idx = np.arange(s, min(hi, s + chunk), dtype=np.int64)
        coeffs = index_to_coeffs(ctx.q, d, idx)
        mats = combine_basis(ctx, coeffs, basis_arr)
        acc = visitor.combine(acc, visitor.visit(ctx, coeffs, mats, s))
        if visitor.saturated(acc):
            break
    return acc


def split_range(lo, hi, parts):
    parts = max(1, min(parts, hi - lo)) if hi > lo else 1
    step, extra = divmod(hi - lo, parts)
    out = []
    a = lo
    for w in range(parts):
        b = a + step + (1 if w < extra else 0)
        out.append((a, b))
        a = b
    return out


def enumerate_affine(basis, ctx, visitor, *, budget=DEFAULT_BUDGET, chunk=DEFAULT_CHUNK,
                     workers=1, start=0, stop=None, shape=None):
    """Visit every F_q-combination of ``basis`` (indices ``start`` to ``stop``).

    ``basis`` is a list of equally shaped :class:`Mat` or a (d, r, c) array.
    The visit count ``stop - start`` (default ``q**d``) is checked against
    ``budget`` before any work starts; :class:`BudgetExceeded` is raised
    instead of truncating. Returns the visitor's aggregate.
    """
    basis_arr = _basis_array(basis, shape)
    total = ctx.q ** basis_arr.shape[0]
    stop = total if stop is None else min(stop, total)
    if stop - start > budget:
        raise BudgetExceeded(stop - start, budget)
    if workers <= 1 or stop - start <= chunk:
        return _run_range(basis_arr, ctx, visitor, start, stop, chunk)
    ranges = split_range(start, stop, workers)
    mp = multiprocessing.get_context("fork")
    with ProcessPoolExecutor(max_workers=len(ranges), mp_context=mp) as pool:
        futures = [pool.submit(_run_range, basis_arr, ctx, visitor, a, b, chunk) for a, b in ranges]
        parts = [f.result() for f in futures]
    acc = visitor.initial()
    for part in parts:
        acc = visitor.combine(acc, part)
    return acc


def span_elements(basis, ctx, shape=None):
    """All elements of a (small) span as an (q**d, r, c) array, in enumeration order."""
    basis_arr = _basis_array(basis, shape)
    d = basis_arr.shape[0]
    coeffs = index_to_coeffs(ctx.q, d, np.arange(ctx.q ** d))
    return combine_basis(ctx, coeffs, basis_arr)


__all__ = ["Visitor", "CountAll", "CountWhere", "CountRestrictedNilpotent",
           "MaxRankRestrictedNilpotent", "FirstWhere", "enumerate_affine", "span_elements",
           "DEFAULT_BUDGET"]
