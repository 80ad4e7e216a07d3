"""Characteristic-7 counterexample checks.

For e of type 7^2 in gl(14), z(e) is gl(2, F_7[t]/(t^7)); an element is
stored as its coefficient matrices A_0, ..., A_6. The checks here confirm,
by direct evaluation of seventh powers, which elements lie in the
restricted nullcone, and inspect the grading of z(e') for e' of type 7.5.2.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import batch
from .enumerate import span_elements
from .errors import DimensionMismatch
from .ff import make_field
from .matff import kernel_vectors
from .nilpotent import Partition, commutant_operator, cocharacter_weights, jordan_matrix

P7 = 7
M7 = 7


def trunc_mul(a, b, p=P7):
    """Product of batched truncated polynomial matrices, arrays (..., m, r, r)."""
    m = a.shape[-3]
    out = np.zeros(np.broadcast_shapes(a.shape, b.shape), dtype=np.int64)
    for i in range(m):
        out[..., i:, :, :] += np.matmul(a[..., i:i + 1, :, :], b[..., :m - i, :, :])
    return out % p


def trunc_pow(a, e, p=P7):
    result = np.zeros_like(a)
    result[..., 0, :, :] = np.eye(a.shape[-1], dtype=np.int64)
    base = a % p
    while e:
        if e & 1:
            result = trunc_mul(result, base, p)
        e >>= 1
        if e:
            base = trunc_mul(base, base, p)
    return result


class TruncMat:
    """A_0 + A_1 t + ... + A_{m-1} t^{m-1} in gl(r, F_p[t]/(t^m))."""

    __slots__ = ("coeffs", "p")

    def __init__(self, coeffs, p=P7):
        c = np.asarray(coeffs, dtype=np.int64)
        if c.ndim != 3 or c.shape[1] != c.shape[2]:
            raise DimensionMismatch(f"expected (m, r, r) coefficients, got {c.shape}")
        self.coeffs = c % p
        self.p = p

    @property
    def m(self):
        return self.coeffs.shape[0]

    @classmethod
    def zero(cls, m=M7, r=2, p=P7):
        return cls(np.zeros((m, r, r), dtype=np.int64), p)

    def __matmul__(self, other):
        return TruncMat(trunc_mul(self.coeffs, other.coeffs, self.p), self.p)

    def __pow__(self, e):
        return TruncMat(trunc_pow(self.coeffs, e, self.p), self.p)

    def __eq__(self, other):
        return isinstance(other, TruncMat) and self.p == other.p and \
            np.array_equal(self.coeffs, other.coeffs)

    __hash__ = None

    def is_zero(self):
        return not self.coeffs.any()

    def __repr__(self):
        return f"TruncMat({self.coeffs.tolist()}, p={self.p})"


def remark7_seventh_power(a):
    """Exact A^7 in gl(2, F_7[t]/(t^7))."""
    return a ** 7


def branch_predicate(coeffs, p=P7):
    """For A_0 = e12: A_1 upper triangular and s + 2(a-d)^2 = 0, batched over (N, m, 2, 2)."""
    a1, a2 = coeffs[:, 1], coeffs[:, 2]
    a, d, c = a1[:, 0, 0], a1[:, 1, 1], a1[:, 1, 0]
    s = a2[:, 1, 0]
    return (c % p == 0) & ((s + 2 * (a - d) ** 2) % p == 0)


@dataclass
class BranchReport:
    samples: int
    seed: int
    zero_a0_violations: int
    branch_violations: int
    branch_true: int
    branch_false: int

    @property
    def violations(self):
        return self.zero_a0_violations + self.branch_violations

    @property
    def passed(self):
        return self.violations == 0

    def to_json(self):
        d = asdict(self)
        d["violations"] = self.violations
        d["passed"] = self.passed
        return d


def _random_with_e12(rng, size, p=P7):
    """Random A with A_0 = e12, stratified so both sides of the branch are well covered.

    Quarters: unconstrained; A_1 upper triangular; s-condition forced;
    both forced (the last quarter is exactly the predicted nullcone branch).
    """
    a = rng.integers(0, p, size=(size, M7, 2, 2))
    a[:, 0] = np.array([[0, 1], [0, 0]])
    group = np.arange(size) % 4
    upper = (group == 1) | (group == 3)
    a[upper, 1, 1, 0] = 0
    force_s = group >= 2
    diff = a[force_s, 1, 0, 0] - a[force_s, 1, 1, 1]
    a[force_s, 2, 1, 0] = (-2 * diff * diff) % p
    return a


def remark7_branch_check(samples=10_000, seed=42):
    """Sampled check of both halves of the p = 7 nullcone description."""
    rng = np.random.default_rng(seed)
    zero = rng.integers(0, P7, size=(samples, M7, 2, 2))
    zero[:, 0] = 0
    bad_zero = int(trunc_pow(zero, 7).reshape(samples, -1).any(axis=1).sum())

    a = _random_with_e12(rng, samples)
    vanishes = ~trunc_pow(a, 7).reshape(samples, -1).any(axis=1)
    pred = branch_predicate(a)
    return BranchReport(samples, seed, bad_zero, int((vanishes != pred).sum()),
                        int(pred.sum()), int((~pred).sum()))


@dataclass
class GradingReport:
    partition: list
    p: int
    dim_centralizer: int
    degree_dims: dict
    dim_degree0: int
    degree0_commutative: bool
    toral: bool
    dim_degree1: int
    positive_samples: int
    positive_violations: int

    @property
    def passed(self):
        return self.positive_violations == 0

    def to_json(self):
        d = asdict(self)
        d["degree_dims"] = {str(k): v for k, v in sorted(self.degree_dims.items())}
        d["passed"] = self.passed
        return d


def graded_centralizer(partition, p):
    """{degree: basis array (d, n, n)} of z(e') for the Jordan matrix e' of ``partition``.

    The grading is by the weights of the associated cocharacter, which puts
    e' in degree 2.
    """
    ctx = make_field(p)
    lam = Partition(partition)
    e = jordan_matrix(list(lam), ctx)
    w = np.array(cocharacter_weights(lam))
    n = len(w)
    deg = (w[:, None] - w[None, :]).reshape(-1)
    op = commutant_operator(ctx, e)
    pieces = {}
    for d in np.unique(deg):
        cols = np.flatnonzero(deg == d)
        ker = kernel_vectors(ctx, op[:, cols])
        if len(ker):
            full = np.zeros((len(ker), n * n), dtype=np.int64)
            full[:, cols] = ker
            pieces[int(d)] = full.reshape(-1, n, n)
    return pieces


def _toral(ctx, basis, budget):
    """Exhaustive: do the solutions of h^p = h span the (commutative) span of ``basis``?"""
    d = len(basis)
    if d == 0:
        return True
    if ctx.q ** d > budget:
        raise ValueError(f"toral search needs {ctx.q ** d} visits, budget {budget}")
    elems = span_elements(basis, ctx)
    fixed = elems[(batch.matpow(ctx, elems, ctx.p) == elems).all(axis=(1, 2))]
    if len(fixed) == 0:
        return False
    flat = fixed.reshape(len(fixed), -1)
    return int(batch.rank(ctx, flat[None])[0]) == d


def grading_check(partition, p, samples=1000, seed=0, budget=2**20):
    ctx = make_field(p)
    pieces = graded_centralizer(partition, p)
    z0 = pieces.get(0, np.zeros((0, 1, 1), np.int64))
    comm = True
    if len(z0):
        prod = batch.matmul(ctx, z0[:, None], z0[None, :])
        comm = not ctx.sub(prod, np.swapaxes(prod, 0, 1)).any()
    toral = comm and _toral(ctx, z0, budget)
    pos = [b for d, b in pieces.items() if d > 0]
    bad = 0
    if pos and samples:
        rng = np.random.default_rng(seed)
        basis = np.concatenate(pos)
        coeffs = rng.integers(0, p, size=(samples, len(basis)))
        mats = (np.tensordot(coeffs, basis, axes=1)) % p
        bad = int((~batch.pth_power_is_zero(ctx, mats)).sum())
    return GradingReport(list(Partition(partition)), p, sum(len(b) for b in pieces.values()),
                         {d: len(b) for d, b in pieces.items()}, len(z0), comm, toral,
                         len(pieces.get(1, ())), samples if pos else 0, bad)


__all__ = ["TruncMat", "remark7_seventh_power", "remark7_branch_check", "BranchReport",
           "grading_check", "GradingReport", "graded_centralizer", "branch_predicate",
           "trunc_mul", "trunc_pow"]
