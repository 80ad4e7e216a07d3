import numpy as np
import pytest

from nilcomm.enumerate import (CountAll, CountRestrictedNilpotent, FirstWhere,
                               MaxRankRestrictedNilpotent, enumerate_affine, index_to_coeffs,
                               span_elements, split_range)
from nilcomm.errors import BudgetExceeded
from nilcomm.ff import make_field
from nilcomm.matff import Mat
from nilcomm.nilpotent import canonical_e, centralizer_basis

import oracles


def test_visits_exactly_q_to_the_d():
    for p, k, d in [(2, 1, 10), (2, 2, 5), (3, 1, 6), (7, 1, 3)]:
        ctx = make_field(p, k)
        basis = [Mat.e(ctx, 4, 1 + t // 4, 1 + t % 4) for t in range(d)]
        assert enumerate_affine(basis, ctx, CountAll(), chunk=97) == ctx.q**d


def test_lexicographic_order_low_index_fastest():
    c = index_to_coeffs(3, 3, np.arange(6))
    assert c.tolist() == [[0, 0, 0], [1, 0, 0], [2, 0, 0], [0, 1, 0], [1, 1, 0], [2, 1, 0]]
    ctx = make_field(3)
    basis = [Mat.e(ctx, 1, 1, 1, cols=1)] * 1
    assert span_elements(basis, ctx)[:, 0, 0].tolist() == [0, 1, 2]


def test_split_range_covers():
    for lo, hi, parts in [(0, 10, 3), (5, 6, 4), (0, 0, 2), (0, 100, 7)]:
        rs = split_range(lo, hi, parts)
        assert rs[0][0] == lo and rs[-1][1] == hi
        assert all(a[1] == b[0] for a, b in zip(rs, rs[1:]))


@pytest.mark.parametrize("workers", [2, 3])
def test_worker_invariance(workers):
    ctx = make_field(2)
    basis = centralizer_basis(canonical_e(5, 2, ctx).matrix)
    one = enumerate_affine(basis, ctx, CountRestrictedNilpotent(), chunk=512)
    many = enumerate_affine(basis, ctx, CountRestrictedNilpotent(), chunk=512, workers=workers)
    assert one == many == oracles.cent_nil_oracle(5, 2, 2)
    r1 = enumerate_affine(basis, ctx, MaxRankRestrictedNilpotent(), chunk=512)
    rw = enumerate_affine(basis, ctx, MaxRankRestrictedNilpotent(), chunk=512, workers=workers)
    assert r1 == rw


def test_partial_ranges_add_up():
    ctx = make_field(2, 2)
    basis = centralizer_basis(canonical_e(4, 2, ctx).matrix)
    total = enumerate_affine(basis, ctx, CountRestrictedNilpotent())
    mid = 4**8 // 3
    parts = enumerate_affine(basis, ctx, CountRestrictedNilpotent(), stop=mid) + \
        enumerate_affine(basis, ctx, CountRestrictedNilpotent(), start=mid)
    assert parts == total == 496


def test_budget_checked_before_work():
    ctx = make_field(2, 3)
    basis = [Mat.e(ctx, 3, 1 + t // 3, 1 + t % 3) for t in range(8)]
    with pytest.raises(BudgetExceeded) as ei:
        enumerate_affine(basis, ctx, CountAll(), budget=1000)
    assert ei.value.required == 8**8 and ei.value.budget == 1000


def has_two_ones(ctx, mats):
    return mats.reshape(len(mats), -1).sum(axis=1) == 2


def test_first_where_is_lowest_index():
    ctx = make_field(2)
    basis = [Mat.e(ctx, 2, 1, 1), Mat.e(ctx, 2, 1, 2), Mat.e(ctx, 2, 2, 1)]

    for workers in (1, 2):
        idx, coeffs = enumerate_affine(basis, ctx, FirstWhere(has_two_ones), chunk=2, workers=workers)
        assert idx == 3 and coeffs.tolist() == [1, 1, 0]
    assert enumerate_affine(basis, ctx, FirstWhere(lambda c, m: np.zeros(len(m), bool))) is None


def test_empty_basis():
    ctx = make_field(2)
    assert enumerate_affine([], ctx, CountAll(), shape=(2, 2)) == 1
