"""The restricted nilpotent commuting variety C = {(A, B) : A^[p] = B^[p] = [A, B] = 0}.

Point counts over F_q are computed orbit by orbit::

    |C(F_q)| = sum_i |G . e_i| * #{y in z(e_i) : y^[p] = 0}

and each centralizer count is an exhaustive enumeration of the
centralizer's F_q-points. In characteristic 2, ``y^2`` is a quadratic form
in the coordinates of ``y``; when a subset T of basis vectors pairwise
anticommute and square to zero, ``y^2`` is affine-linear in the
T-coordinates once the others are fixed, so each fibre is counted by one
rank computation instead of q^|T| visits ("fibered" counting). Both
methods are exact and agree; the fibered one is what makes q = 8 feasible.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from collections import Counter
from dataclasses import dataclass, field

import networkx as nx
import numpy as np

from . import batch
from .enumerate import (DEFAULT_BUDGET, CountRestrictedNilpotent, MaxRankRestrictedNilpotent,
                        Visitor, combine_basis, enumerate_affine, index_to_coeffs)
from .errors import BudgetExceeded, FieldError, InvariantViolation
from .ff import SUPPORTED_PRIMES, make_field
from .nilpotent import canonical_e, centralizer_basis, nullcone_count, orbit_size
from .pairs import CommPair, block_sum, comm_pair_violation, gl2_act, is_comm_pair
from .remark7 import (BranchReport, GradingReport, TruncMat, grading_check, remark7_branch_check,
                      remark7_seventh_power)
from .strata import (ComponentId, StratumParams, generic_component_rep, random_stratum_batch,
                     random_stratum_params, rep_stratum)


def field_for_order(q):
    """The field GF(q) for a prime power q."""
    q = int(q)
    for p in SUPPORTED_PRIMES:
        k, r = 0, q
        while r % p == 0 and r > 1:
            r //= p
            k += 1
        if r == 1 and k >= 1:
            return make_field(p, k)
    raise FieldError(f"{q} is not a power of a supported prime")


# -- counting --------------------------------------------------------------

def linear_subset(ctx, basis):
    """Indices T of basis vectors that square to zero and pairwise anticommute.

    With such a T, y^2 is affine-linear in the T-coordinates (char 2).
    Chosen as a maximum clique, so the outer enumeration is as small as
    possible for the given basis.
    """
    arr = np.stack([m.entries for m in basis]) if basis else np.zeros((0, 0, 0), np.int64)
    d = len(arr)
    if d == 0:
        return []
    sq = batch.matmul(ctx, arr, arr)
    verts = [t for t in range(d) if not sq[t].any()]
    g = nx.Graph()
    g.add_nodes_from(verts)
    if verts:
        sub = arr[verts]
        prod = batch.matmul(ctx, sub[:, None], sub[None, :])
        anti = ctx.add(prod, np.swapaxes(prod, 0, 1))
        zero = ~anti.any(axis=(-2, -1))
        for a_i, ta in enumerate(verts):
            for b_i in range(a_i + 1, len(verts)):
                if zero[a_i, b_i]:
                    g.add_edge(ta, verts[b_i])
    clique, _ = nx.max_weight_clique(g, weight=None)
    return sorted(clique)


class FiberCount(Visitor):
    """Counts solutions of y^2 = 0 over the fibres of the T-coordinates.

    Aggregate: Counter {kernel dimension: number of consistent outer points}.
    """

    def __init__(self, t_basis):
        self.t_basis = np.asarray(t_basis, dtype=np.int64)

    def initial(self):
        return Counter()

    def visit(self, ctx, coeffs, mats, offset):
        n_batch, n, _ = mats.shape
        rhs = ctx.neg(batch.matmul(ctx, mats, mats)).reshape(n_batch, n * n)
        cols = []
        for b in self.t_basis:
            term = ctx.add(batch.matmul(ctx, mats, b), batch.matmul(ctx, b[None], mats))
            cols.append(term.reshape(n_batch, n * n))
        lhs = np.stack(cols, axis=2)
        ok, nullity = batch.affine_nullity(ctx, lhs, rhs)
        return Counter(nullity[ok].tolist())

    def combine(self, a, b):
        out = Counter(a)
        out.update(b)
        return out


def count_restricted_in_span(basis, ctx, *, method="auto", budget=DEFAULT_BUDGET, workers=1):
    """Exact #{y in span(basis) : y^[p] = 0} over ctx.

    ``method`` is ``"brute"`` (visit every element), ``"fibered"``
    (characteristic 2; requires the span to be closed under squaring
    only through the linear subset, which holds for any basis) or
    ``"auto"``.
    """
    basis = list(basis)
    d = len(basis)
    if method == "auto":
        method = "fibered" if ctx.p == 2 and d else "brute"
    if method == "brute":
        n = basis[0].rows if basis else 0
        return enumerate_affine(basis, ctx, CountRestrictedNilpotent(), budget=budget,
                                workers=workers, shape=(n, n))
    if method != "fibered":
        raise ValueError(f"unknown counting method {method!r}")
    if ctx.p != 2:
        raise FieldError("fibered counting relies on y^2 being quadratic: characteristic 2 only")
    t_idx = linear_subset(ctx, basis)
    t_set = set(t_idx)
    outer = [basis[j] for j in range(d) if j not in t_set]
    t_arr = np.stack([basis[j].entries for j in t_idx]) if t_idx else np.zeros((0,) + basis[0].shape, np.int64)
    hist = enumerate_affine(outer, ctx, FiberCount(t_arr), budget=budget, workers=workers,
                            shape=basis[0].shape)
    return sum(cnt * ctx.q**nul for nul, cnt in hist.items())


def count_cent_nil(n, i, q, *, method="auto", budget=DEFAULT_BUDGET, workers=1):
    """#{y in z(e_i) : y^[p] = 0} over F_q, e_i of type 2^i.1^(n-2i).

    With ``method="auto"`` and i = 0 the centralizer is all of gl(n) and the
    count is the nullcone size, taken from the orbit decomposition (p = 2);
    every other case is enumerated.
    """
    ctx = field_for_order(q)
    if method == "auto" and i == 0 and ctx.p == 2:
        return nullcone_count(n, ctx.q)
    e = canonical_e(n, i, ctx).matrix
    return count_restricted_in_span(centralizer_basis(e), ctx, method=method,
                                    budget=budget, workers=workers)


def count_C(n, q, *, method="auto", budget=DEFAULT_BUDGET, workers=1):
    """|C(F_q)| for gl(n) in characteristic 2 via the orbit-stratified sum."""
    ctx = field_for_order(q)
    if ctx.p != 2:
        raise FieldError("count_C sums over the orbits e_i, which classify N_1 only for p = 2")
    return sum(orbit_size(n, i, ctx.q) * count_cent_nil(n, i, ctx.q, method=method,
                                                         budget=budget, workers=workers)
               for i in range(n // 2 + 1))


def max_rank_second(n, i, q, *, budget=DEFAULT_BUDGET, workers=1):
    """max rk(y) over y in z(e_i) with y^[p] = 0.

    The enumeration stops once the rank reaches n - ceil(n/p), the largest
    rank any p-nilpotent n x n matrix can have, so the result is exact.
    """
    ctx = field_for_order(q)
    e = canonical_e(n, i, ctx).matrix
    bound = n - (-(-n // ctx.p))
    return enumerate_affine(centralizer_basis(e), ctx, MaxRankRestrictedNilpotent(bound),
                            budget=budget, workers=workers)


def _restricted_nullcone(ctx, n, budget):
    """All n x n matrices x with x^[p] = 0, as an array (exhaustive over q^(n^2))."""
    total = ctx.q ** (n * n)
    if total > budget:
        raise BudgetExceeded(total, budget)
    units = np.eye(n * n, dtype=np.int64).reshape(n * n, n, n)
    hits = []
    for lo in range(0, total, 2**16):
        idx = np.arange(lo, min(total, lo + 2**16))
        mats = combine_basis(ctx, index_to_coeffs(ctx.q, n * n, idx), units)
        hits.append(mats[batch.pth_power_is_zero(ctx, mats)])
    return np.concatenate(hits)


def count_C_exhaustive(n, q, *, budget=DEFAULT_BUDGET):
    """|C(F_q)| by enumerating the nullcone and testing every pair in it for commutation.

    This is the direct definition: independent of orbit sizes and centralizers.
    """
    ctx = field_for_order(q)
    nil = _restricted_nullcone(ctx, n, budget)
    if len(nil) ** 2 > budget:
        raise BudgetExceeded(len(nil) ** 2, budget)
    count = 0
    for x in nil:
        comm = ctx.sub(batch.matmul(ctx, x[None], nil), batch.matmul(ctx, nil, x[None]))
        count += int((~comm.any(axis=(1, 2))).sum())
    return count


# -- dimension estimates ---------------------------------------------------

@dataclass(frozen=True)
class DimEstimate:
    dim_estimate: float
    leading_coeff: float
    dim_rounded: int
    leading_rounded: int
    q_low: int
    q_high: int
    ratio: float

    def to_json(self):
        return {"dim_estimate": self.dim_estimate, "leading_coeff": self.leading_coeff,
                "dim_rounded": self.dim_rounded, "leading_rounded": self.leading_rounded,
                "q_low": self.q_low, "q_high": self.q_high, "ratio": self.ratio}


def estimate_dim(samples):
    """Slope log(N2/N1)/log(q2/q1) from the two largest q, plus N(q_max)/q_max^round(slope)."""
    samples = sorted((int(q), int(c)) for q, c in samples)
    if len(samples) < 2:
        raise ValueError("need at least two (q, count) samples")
    qs = [q for q, _ in samples]
    if len(set(qs)) != len(qs):
        raise ValueError("field sizes must be distinct")
    if any(c <= 0 for _, c in samples):
        raise ValueError("counts must be positive")
    (q1, n1), (q2, n2) = samples[-2:]
    ratio = n2 / n1
    dim = math.log(ratio) / math.log(q2 / q1)
    d_round = int(round(dim))
    lead = n2 / q2**d_round
    return DimEstimate(dim, lead, d_round, int(round(lead)), q1, q2, ratio)


# -- census ----------------------------------------------------------------

@dataclass
class CensusRecord:
    n: int
    i: object  # stratum index, or "full" for |C(F_q)|
    q: int
    count: int
    elapsed: float = 0.0
    budget_used: int = 0


@dataclass
class CensusReport:
    records: list = field(default_factory=list)
    estimates: dict = field(default_factory=dict)  # (n, i) -> DimEstimate

    def fit(self):
        groups = {}
        for r in self.records:
            groups.setdefault((r.n, r.i), []).append((r.q, r.count))
        self.estimates = {}
        for key, samples in groups.items():
            if len({q for q, _ in samples}) >= 2 and all(c > 0 for _, c in samples):
                self.estimates[key] = estimate_dim(samples)
        return self

    def to_json(self, timing=False):
        recs = []
        for r in self.records:
            d = {"n": r.n, "i": r.i, "q": r.q, "count": r.count, "budget_used": r.budget_used}
            if timing:
                d["elapsed"] = r.elapsed
            recs.append(d)
        ests = [{"n": n, "i": i, **est.to_json()} for (n, i), est in self.estimates.items()]
        return {"records": recs, "estimates": ests}

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["n", "i", "q", "count", "dim_est", "lead_est"])
        for r in self.records:
            est = self.estimates.get((r.n, r.i))
            w.writerow([r.n, r.i, r.q, r.count,
                        "" if est is None else repr(est.dim_estimate),
                        "" if est is None else repr(est.leading_coeff)])
        return buf.getvalue()

    def dumps(self, fmt="json", timing=False):
        if fmt == "csv":
            return self.to_csv()
        return json.dumps(self.to_json(timing), indent=2, sort_keys=True) + "\n"


def _visits(n, i, q, method):
    """Visit count of one stratum's enumeration (0 for closed forms)."""
    ctx = field_for_order(q)
    if method == "auto" and i == 0 and ctx.p == 2:
        return 0
    basis = centralizer_basis(canonical_e(n, i, ctx).matrix)
    if method == "brute" or ctx.p != 2:
        return ctx.q ** len(basis)
    return ctx.q ** (len(basis) - len(linear_subset(ctx, basis)))


def census(n, qs, i=None, *, method="auto", budget=DEFAULT_BUDGET, workers=1):
    """Exact counts for one stratum (``i`` given) or for all of C, over each q in ``qs``."""
    report = CensusReport()
    for q in qs:
        t0 = time.perf_counter()
        if i is None:
            count = count_C(n, q, method=method, budget=budget, workers=workers)
            used = sum(_visits(n, j, q, method) for j in range(n // 2 + 1))
            label = "full"
        else:
            count = count_cent_nil(n, i, q, method=method, budget=budget, workers=workers)
            used = _visits(n, i, q, method)
            label = i
        report.records.append(CensusRecord(n, label, q, count, time.perf_counter() - t0, used))
    return report.fit()


# -- random points -----------------------------------------------------------

def random_cent_nil(ctx, n, i, size, rng):
    """``size`` random elements of z(e_i) with y^2 = 0 (characteristic 2), as an array.

    Every such y is Z_G(e_i)-conjugate into some stratum V_{j,l}, so we pick
    (j, l) uniformly, draw a random point of V_{j,l} and conjugate it by a
    random unit of z(e_i).
    """
    if ctx.p != 2:
        raise FieldError("random_cent_nil samples through the char-2 stratum structure")
    strata = [(j, l) for j in range(i // 2 + 1) for l in range((n - 2 * i) // 2 + 1)]
    pick = rng.integers(0, len(strata), size=size)
    y = np.zeros((size, n, n), dtype=np.int64)
    for s in np.unique(pick):
        sel = np.flatnonzero(pick == s)
        y[sel] = random_stratum_batch(ctx, n, i, *strata[s], sel.size, rng)
    g = random_centralizer_unit(ctx, n, i, size, rng)
    g_inv, _ = batch.inverse(ctx, g)
    return batch.matmul(ctx, batch.matmul(ctx, g, y), g_inv)


def random_centralizer_unit(ctx, n, i, size, rng):
    """Uniform random invertible elements of z(e_i)."""
    basis = np.stack([m.entries for m in centralizer_basis(canonical_e(n, i, ctx).matrix)])
    out = []
    have = 0
    while have < size:
        m = max(4 * (size - have), 64)
        g = combine_basis(ctx, rng.integers(0, ctx.q, size=(m, len(basis))), basis)
        g = g[batch.rank(ctx, g) == n]
        out.append(g)
        have += len(g)
    return np.concatenate(out)[:size]


def random_invertible(ctx, n, size, rng):
    out = []
    have = 0
    while have < size:
        m = max(4 * (size - have), 16)
        g = rng.integers(0, ctx.q, size=(m, n, n))
        g = g[batch.rank(ctx, g) == n]
        out.append(g)
        have += len(g)
    return np.concatenate(out)[:size]


def random_comm_pairs(ctx, n, size, rng):
    """Random points of C(F_q) (p = 2): (g e_i g^-1, g y g^-1) with i uniform."""
    i_vals = rng.integers(0, n // 2 + 1, size=size)
    A = np.zeros((size, n, n), dtype=np.int64)
    B = np.zeros((size, n, n), dtype=np.int64)
    for i in np.unique(i_vals):
        sel = np.flatnonzero(i_vals == i)
        A[sel] = canonical_e(n, int(i), ctx).matrix.entries
        B[sel] = random_cent_nil(ctx, n, int(i), sel.size, rng)
    g = random_invertible(ctx, n, size, rng)
    g_inv, _ = batch.inverse(ctx, g)
    A = batch.matmul(ctx, batch.matmul(ctx, g, A), g_inv)
    B = batch.matmul(ctx, batch.matmul(ctx, g, B), g_inv)
    return A, B


def comm_pair_mask(ctx, A, B):
    """Vectorised is_comm_pair over a batch of pairs."""
    comm = ctx.sub(batch.matmul(ctx, A, B), batch.matmul(ctx, B, A))
    return (batch.pth_power_is_zero(ctx, A) & batch.pth_power_is_zero(ctx, B)
            & ~comm.any(axis=(-2, -1)))


def gl2_closure_violations(n, q, trials, seed=0):
    """Apply random invertible (a b; c d) to random points of C; count outputs leaving C."""
    ctx = field_for_order(q)
    rng = np.random.default_rng(seed)
    A, B = random_comm_pairs(ctx, n, trials, rng)
    if not comm_pair_mask(ctx, A, B).all():
        raise InvariantViolation("sampler produced a point outside C", "sampler")
    coef = random_invertible(ctx, 2, trials, rng)
    a, b, c, d = (coef[:, r, s] for r, s in ((0, 0), (0, 1), (1, 0), (1, 1)))
    A2 = ctx.add(batch.scale(ctx, a, A), batch.scale(ctx, b, B))
    B2 = ctx.add(batch.scale(ctx, c, A), batch.scale(ctx, d, B))
    return int((~comm_pair_mask(ctx, A2, B2)).sum())


__all__ = ["CommPair", "is_comm_pair", "comm_pair_violation", "gl2_act", "block_sum",
           "count_cent_nil", "count_C", "count_C_exhaustive", "count_restricted_in_span",
           "max_rank_second", "estimate_dim", "DimEstimate", "census", "CensusReport",
           "CensusRecord", "field_for_order", "random_comm_pairs", "random_cent_nil",
           "random_centralizer_unit", "random_invertible", "gl2_closure_violations",
           "comm_pair_mask", "linear_subset",
           "StratumParams", "rep_stratum", "random_stratum_params", "ComponentId",
           "generic_component_rep", "TruncMat", "remark7_seventh_power", "remark7_branch_check",
           "grading_check", "BranchReport", "GradingReport"]
