from collections import Counter

import numpy as np
import pytest

from nilcomm.errors import DimensionMismatch, FieldError, InvariantViolation
from nilcomm.ff import make_field
from nilcomm.matff import Mat
from nilcomm.modvar import (LambdaModule, classify_indec, decompose, decomposition_report,
                            direct_sum, dualize, end_basis, fingerprint, hom_basis, iso_test)
from nilcomm.strata import ComponentId, generic_component_rep, triv_pair, w_pair, x0_pair, x0_plus_pair
from nilcomm.variety import random_comm_pairs, random_invertible

F2 = make_field(2)
F4 = make_field(2, 2)


def mod(ctx, n, xs, ys):
    return LambdaModule(Mat.from_units(ctx, n, xs), Mat.from_units(ctx, n, ys))


def random_modules(ctx, n, size, rng):
    A, B = random_comm_pairs(ctx, n, size, rng)
    return [LambdaModule.from_arrays(ctx, a, b) for a, b in zip(A, B)]


def random_conjugates(ctx, mods, rng):
    out = []
    for m in mods:
        g = Mat(ctx, random_invertible(ctx, m.n, 1, rng)[0])
        out.append(m.conjugate(g))
    return out


TRIV = LambdaModule.from_pair(triv_pair(F2))
W = LambdaModule.from_pair(w_pair(F2))
ZP3 = mod(F2, 3, [(1, 3)], [(1, 2)])


def test_module_validation():
    with pytest.raises(InvariantViolation):
        mod(F2, 2, [(1, 2)], [(2, 1)])
    f3 = make_field(3)
    with pytest.raises(FieldError):
        LambdaModule(Mat.zeros(f3, 2), Mat.zeros(f3, 2))


# -- fingerprints ------------------------------------------------------------

def test_fingerprint_examples():
    fp = fingerprint(TRIV)
    assert (fp.dim, fp.rkX, fp.rkY, fp.rkXY, fp.rkXplusY, fp.dimRad, fp.endDim) == (1, 0, 0, 0, 0, 0, 1)
    fp = fingerprint(W)
    assert (fp.dim, fp.rkX, fp.rkY, fp.rkXY, fp.dimRad, fp.dimSoc, fp.endDim) == (4, 2, 2, 1, 3, 1, 4)
    assert fp.loewyLength == 3
    fp = fingerprint(ZP3)
    assert (fp.dim, fp.rkX, fp.rkY, fp.rkXY, fp.dimRad, fp.dimSoc) == (3, 1, 1, 0, 1, 1)


def test_fingerprint_conjugation_invariant():
    rng = np.random.default_rng(0)
    trials = 0
    for ctx in (F2, F4):
        for n in range(1, 7):
            mods = random_modules(ctx, n, 84, rng)
            for m, c in zip(mods, random_conjugates(ctx, mods, rng)):
                fp = fingerprint(m)
                assert fingerprint(c) == fp
                assert fp.rkXY <= min(fp.rkX, fp.rkY) and fp.dimRad <= fp.rkX + fp.rkY
                trials += 1
    assert trials >= 1000


def test_duality_arithmetic():
    rng = np.random.default_rng(1)
    trials = 0
    for ctx in (F2, F4):
        for n in range(1, 7):
            for m in random_modules(ctx, n, 84, rng):
                a, b = fingerprint(m), fingerprint(dualize(m))
                assert b.dimRad == n - a.dimSoc and b.dimSoc == n - a.dimRad
                assert b.endDim == a.endDim
                trials += 1
    assert trials >= 1000


# -- endomorphisms -----------------------------------------------------------

def test_end_basis_examples():
    assert len(end_basis(TRIV)) == 1
    zp5 = LambdaModule.from_pair(x0_plus_pair(F2, 5))
    assert len(end_basis(zp5)) == 7
    assert len(end_basis(direct_sum(TRIV, TRIV))) == 4


def test_end_basis_contains_identity_and_commutes():
    rng = np.random.default_rng(2)
    for m in random_modules(F4, 4, 10, rng):
        ends = end_basis(m)
        arr = np.stack([e.entries for e in ends]).reshape(len(ends), -1)
        from nilcomm.batch import rank
        with_id = np.concatenate([arr, np.eye(4, dtype=np.int64).reshape(1, -1)])
        assert rank(F4, with_id[None])[0] == len(ends)
        for e in ends:
            assert e @ m.X == m.X @ e and e @ m.Y == m.Y @ e


def test_hom_basis_dimension_mismatch_ok():
    # Hom between modules of different dimension is allowed
    assert len(hom_basis(TRIV, W)) == 1


# -- decomposition -----------------------------------------------------------

def tags(summands):
    return sorted(str(classify_indec(s)) for s in summands)


def test_decompose_examples():
    ds = decompose(W)
    assert len(ds) == 1 and ds[0].certified and ds[0].n == 4
    ds = decompose(LambdaModule.from_pair(x0_pair(F2, 4)))
    assert all(s.certified for s in ds) and tags(ds) == ["U(1:0)", "U(1:1)"]
    ds = decompose(direct_sum(W, TRIV))
    assert sorted(s.n for s in ds) == [1, 4] and tags(ds) == ["TRIV", "W"]


def test_classify_examples():
    assert str(classify_indec(ZP3)) == "ZPLUS(3)"
    cls = classify_indec(dualize(ZP3))
    assert str(cls) == "ZMINUS(3)" and (cls.fingerprint.dimRad, cls.fingerprint.dimSoc) == (2, 2)
    assert str(classify_indec(mod(F2, 2, [(1, 2)], [(1, 2)]))) == "U(1:1)"
    assert str(classify_indec(mod(F2, 2, [], [(2, 1)]))) == "U(0:1)"
    assert str(classify_indec(W)) == "W"
    assert classify_indec(TRIV).tag == "TRIV"
    with pytest.raises(InvariantViolation):
        classify_indec(W, certified=False)


def test_u_parameter_normalized_over_gf4():
    e = Mat.e(F4, 2, 1, 2)
    m = LambdaModule(e * 2, e * 3)
    cls = classify_indec(m)
    assert cls.tag == "U" and cls.parameter[0] == 1 and cls.parameter == (1, F4.div(3, 2))


def test_generic_x0_plus_and_dual():
    zp = LambdaModule.from_pair(x0_plus_pair(F2, 5))
    assert tags(decompose(zp)) == ["ZPLUS(5)"]
    assert tags(decompose(dualize(zp))) == ["ZMINUS(5)"]
    zm = LambdaModule.from_pair(generic_component_rep(ComponentId(5, "X_j_minus", 0), F2))
    assert iso_test(zm, dualize(zp)).isomorphic


def test_x_half():
    half = LambdaModule.from_pair(generic_component_rep(ComponentId(5, "X_half"), F2))
    assert tags(decompose(half)) == ["TRIV", "W"]


def test_decomposition_report():
    rep = decomposition_report(decompose(direct_sum(W, TRIV)))
    assert sorted(r["class_tag"] for r in rep) == ["TRIV", "W"]
    assert set(rep[0]) == {"dim", "class_tag", "parameter", "certified", "fingerprint"}


def test_fitting_tier_splits_zero_module():
    zero = LambdaModule(Mat.zeros(F2, 5), Mat.zeros(F2, 5))  # endDim 25 is beyond tier 1
    ds = decompose(zero)
    assert [s.n for s in ds] == [1] * 5 and all(s.certified for s in ds)


def block_sum_of(summands):
    return direct_sum(*(s.module for s in summands))


def test_decompose_is_partition():
    rng = np.random.default_rng(3)
    checked = 0
    for n in range(1, 6):
        for m in random_modules(F2, n, 30, rng):
            ds = decompose(m)
            assert sum(s.n for s in ds) == n
            # the embeddings together form a basis adapted to the summands
            emb = Mat(F2, np.concatenate([s.embedding.entries for s in ds], axis=1))
            from nilcomm.matff import rank
            assert rank(emb) == n
            for s in ds:
                assert m.X @ s.embedding == s.embedding @ s.module.X
                assert m.Y @ s.embedding == s.embedding @ s.module.Y
            if all(s.certified for s in ds):
                for s in ds:
                    again = decompose(s.module)
                    assert len(again) == 1 and again[0].module == s.module
                assert iso_test(block_sum_of(ds), m).isomorphic
                checked += 1
    assert checked >= 100


def test_krull_schmidt_stability():
    rng = np.random.default_rng(4)
    done = 0
    while done < 100:
        n = int(rng.integers(2, 6))
        m = random_modules(F2, n, 1, rng)[0]
        c = random_conjugates(F2, [m], rng)[0]
        a, b = decompose(m), decompose(c, seed=7)
        if not all(s.certified for s in a + b):
            continue
        fa = Counter(fingerprint(s.module) for s in a)
        fb = Counter(fingerprint(s.module) for s in b)
        assert fa == fb
        done += 1


# -- duality and isomorphism ---------------------------------------------------

def test_dualize_examples():
    assert dualize(TRIV) == TRIV
    assert iso_test(dualize(W), W).isomorphic
    assert str(classify_indec(dualize(ZP3))) == "ZMINUS(3)"


def test_iso_test_examples():
    a = mod(F2, 2, [(1, 2)], [])
    b = mod(F2, 2, [(2, 1)], [])
    res = iso_test(a, b)
    assert res.isomorphic and res.certain
    g = res.witness
    assert g @ a.X == b.X @ g
    u10 = mod(F2, 2, [(1, 2)], [])
    u11 = mod(F2, 2, [(1, 2)], [(1, 2)])
    res = iso_test(u10, u11)
    assert not res.isomorphic and res.certain
    with pytest.raises(DimensionMismatch):
        iso_test(u10, W)


def test_iso_test_double_dual():
    rng = np.random.default_rng(5)
    for n in range(1, 6):
        for m in random_modules(F2, n, 10, rng):
            assert iso_test(m, dualize(dualize(m))).isomorphic


def test_iso_test_sampling_tier():
    zero = LambdaModule(Mat.zeros(F2, 5), Mat.zeros(F2, 5))
    res = iso_test(zero, zero, budget=1000)
    assert res.isomorphic  # sampling finds an invertible matrix quickly
