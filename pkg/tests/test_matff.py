import numpy as np
import pytest

from nilcomm import matff
from nilcomm.enumerate import CountAll, CountWhere, enumerate_affine
from nilcomm.errors import (BudgetExceeded, DimensionMismatch, FieldMismatch, InvariantViolation,
                            SingularMatrix)
from nilcomm.ff import make_field
from nilcomm.matff import BlockSpec, Mat
from nilcomm.nilpotent import canonical_e, centralizer_basis, jordan_type

import oracles

F2 = make_field(2)
F4 = make_field(2, 2)
F7 = make_field(7)


def units(ctx, n, *pairs):
    return Mat.from_units(ctx, n, pairs)


def random_invertible(ctx, n, rng):
    while True:
        g = Mat.random(ctx, n, rng=rng)
        if matff.is_invertible(g):
            return g


def test_arith_examples():
    e12 = Mat.e(F2, 2, 1, 2)
    assert matff.commutator(e12, e12).is_zero()
    assert matff.mat_pow(e12, 2).is_zero()
    a = units(F2, 4, (1, 2), (3, 4))
    b = units(F2, 4, (1, 3), (2, 4))
    assert matff.mul(a, b) == Mat.e(F2, 4, 1, 4)
    assert matff.commutator(a, b).is_zero()


def test_arith_errors():
    with pytest.raises(DimensionMismatch):
        matff.mul(Mat.zeros(F2, 2, 3), Mat.zeros(F2, 2, 3))
    with pytest.raises(FieldMismatch):
        matff.add(Mat.zeros(F2, 2), Mat.zeros(F4, 2))
    with pytest.raises(DimensionMismatch):
        matff.pth_power(Mat.zeros(F2, 2, 3))


def test_rank_kernel_examples():
    r, k = matff.rank_kernel(Mat.zeros(F2, 3))
    assert (r, len(k)) == (0, 3)
    r, k = matff.rank_kernel(Mat.identity(F7, 5))
    assert (r, len(k)) == (5, 0)
    r, k = matff.rank_kernel(units(F2, 4, (1, 2), (3, 4)))
    assert r == 2
    support = {int(np.flatnonzero(v.entries[:, 0])[0]) for v in k}
    assert support == {0, 2}  # coordinates 1 and 3, 1-based


@pytest.mark.parametrize("p,k", [(2, 1), (2, 2), (3, 1), (5, 1), (7, 1), (3, 2)])
def test_rank_kernel_against_oracle(p, k):
    ctx = make_field(p, k)
    F = oracles.Field(p, k)
    rng = np.random.default_rng(p * 10 + k)
    for _ in range(60):
        r, c = rng.integers(1, 7, size=2)
        m = Mat.random(ctx, r, c, rng)
        # low-rank cases are the interesting ones
        if rng.random() < 0.5:
            m = matff.mul(Mat.random(ctx, r, 2, rng), Mat.random(ctx, 2, c, rng))
        rk, ker = matff.rank_kernel(m)
        assert rk == F.rank(m.entries)
        assert rk + len(ker) == c
        for v in ker:
            assert matff.mul(m, v).is_zero()
        if ker:
            stacked = np.hstack([v.entries for v in ker])
            assert F.rank(stacked) == len(ker)


def test_packed_and_generic_agree():
    rng = np.random.default_rng(1)
    for _ in range(1000):
        r, c, s = rng.integers(1, 17, size=3)
        a = Mat.random(F2, r, c, rng)
        b = Mat.random(F2, c, s, rng)
        if rng.random() < 0.3:
            a = matff.mul(Mat.random(F2, r, 3, rng), Mat.random(F2, 3, c, rng))
        assert matff.mul(a, b, packed=True) == matff.mul(a, b, packed=False)
        assert matff.rank(a, packed=True) == matff.rank(a, packed=False)
        rp, kp = matff.rank_kernel(a, packed=True)
        rg, kg = matff.rank_kernel(a, packed=False)
        assert rp == rg and [v.entries.tolist() for v in kp] == [v.entries.tolist() for v in kg]


def test_packed_requires_gf2():
    with pytest.raises(Exception):
        matff.mul(Mat.zeros(F4, 2), Mat.zeros(F4, 2), packed=True)


def test_rank_properties():
    rng = np.random.default_rng(2)
    for ctx in (F2, F4, F7):
        for _ in range(50):
            n = int(rng.integers(1, 7))
            a, b = Mat.random(ctx, n, rng=rng), Mat.random(ctx, n, rng=rng)
            assert matff.rank(matff.mul(a, b)) <= min(matff.rank(a), matff.rank(b))
            g = random_invertible(ctx, n, rng)
            x = Mat.random(ctx, n, rng=rng)
            assert matff.rank(matff.conjugate(g, x)) == matff.rank(x)
            assert matff.pth_power(matff.conjugate(g, x)) == matff.conjugate(g, matff.pth_power(x))


def test_pth_power_examples():
    assert matff.is_restricted_nilpotent(Mat.e(F2, 2, 1, 2))
    inv = units(F2, 2, (1, 2), (2, 1))
    assert not matff.is_restricted_nilpotent(inv)
    assert matff.pth_power(inv) == Mat.identity(F2, 2)
    assert matff.is_restricted_nilpotent(Mat.jordan_block(F7, 7))
    assert not matff.is_restricted_nilpotent(Mat.jordan_block(F7, 8))


def test_conjugate_examples():
    x = Mat.random(F4, 4, rng=3)
    assert matff.conjugate(Mat.identity(F4, 4), x) == x
    swap = units(F2, 2, (1, 2), (2, 1))
    assert matff.conjugate(swap, Mat.e(F2, 2, 1, 2)) == Mat.e(F2, 2, 2, 1)
    with pytest.raises(SingularMatrix):
        matff.conjugate(Mat.zeros(F4, 4), x)


def test_conjugate_preserves_jordan_type():
    rng = np.random.default_rng(4)
    for _ in range(100):
        n = int(rng.integers(2, 7))
        i = int(rng.integers(0, n // 2 + 1))
        e = canonical_e(n, i, F2).matrix
        g = random_invertible(F2, n, rng)
        assert jordan_type(matff.conjugate(g, e)) == jordan_type(e)


def test_inverse():
    rng = np.random.default_rng(5)
    for ctx in (F2, F4, make_field(3, 2)):
        for _ in range(20):
            g = random_invertible(ctx, int(rng.integers(1, 6)), rng)
            assert matff.mul(g, matff.inverse(g)) == Mat.identity(ctx, g.rows)


def test_theta_dual():
    e12 = Mat.e(F2, 2, 1, 2)
    assert matff.theta_dual(e12) == e12
    rng = np.random.default_rng(6)
    for ctx in (F2, F4, F7, make_field(3)):
        for _ in range(10):
            x = Mat.random(ctx, int(rng.integers(1, 6)), rng=rng)
            assert matff.theta_dual(matff.theta_dual(x)) == x
            y = Mat.random(ctx, x.rows, rng=rng)
            # a Lie algebra map: theta[x,y] = [theta x, theta y]
            assert matff.theta_dual(matff.commutator(x, y)) == \
                matff.commutator(matff.theta_dual(x), matff.theta_dual(y))
    for n in range(1, 7):
        for i in range(n // 2 + 1):
            e = canonical_e(n, i, F2).matrix
            assert jordan_type(matff.theta_dual(e)) == jordan_type(e)


def test_block_spec():
    spec = BlockSpec.square([1, 2, 1])
    m = Mat.random(F7, 4, rng=7)
    blocks = {(r, c): spec.block(m, r, c) for r in range(3) for c in range(3)}
    assert spec.assemble(F7, blocks) == m
    with pytest.raises(Exception):
        BlockSpec((1, 2), (3,)).block(m, 0, 0)


def test_json_roundtrip_and_errors():
    m = Mat.random(F4, 2, 3, rng=8)
    assert Mat.from_json(m.to_json()) == m
    bad = m.to_json()
    del bad["entries"]
    with pytest.raises(InvariantViolation) as ei:
        matff.matrix_from_json(bad)
    assert "entries" in str(ei.value)
    bad = m.to_json()
    bad["n_rows"] = 5
    with pytest.raises(InvariantViolation, match="entries"):
        matff.matrix_from_json(bad)
    bad = m.to_json()
    bad["entries"][0][0] = 9
    with pytest.raises(InvariantViolation, match="entries"):
        matff.matrix_from_json(bad)
    bad = m.to_json()
    bad["p"] = 4
    with pytest.raises(InvariantViolation, match="'p'"):
        matff.matrix_from_json(bad)


def test_enumerate_examples():
    e12 = Mat.e(F2, 2, 1, 2)
    assert enumerate_affine([e12], F2, CountAll()) == 2
    basis = centralizer_basis(canonical_e(2, 1, F2).matrix)
    sq0 = CountWhere(lambda ctx, m: ~(np.einsum("bij,bjk->bik", m, m) % 2).any(axis=(1, 2)))
    assert enumerate_affine(basis, F2, sq0) == 2


def test_enumerate_budget():
    f8 = make_field(2, 3)
    basis = [Mat.e(f8, 3, 1 + t // 3, 1 + t % 3) for t in range(8)]
    with pytest.raises(BudgetExceeded):
        enumerate_affine(basis, f8, CountAll(), budget=8**8 - 1)
    assert enumerate_affine(basis[:5], f8, CountAll()) == 8**5
