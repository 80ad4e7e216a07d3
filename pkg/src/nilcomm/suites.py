"""Named verification suites: exact counts, fitted estimates and module checks.

Each suite returns a :class:`SuiteReport` whose JSON embeds every exact
value alongside its expectation, so a changed pin is visible by inspection.
Reports depend only on the configuration (never on timing or worker
count).
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, field

from .enumerate import DEFAULT_BUDGET
from .ff import make_field
from .modvar import LambdaModule, classify_indec, decompose, dualize, fingerprint
from .nilpotent import jordan_type, two_one_partition
from .remark7 import grading_check, remark7_branch_check
from .strata import ComponentId, generic_component_rep, w_pair, x0_pair, x0_plus_pair
from .variety import (count_C, count_C_exhaustive, count_cent_nil, estimate_dim,
                      gl2_closure_violations, max_rank_second)

WORKERS_ENV = "NILCOMM_WORKERS"

# Regression pins. Each was computed by exhaustive enumeration and
# cross-checked against an independent brute-force oracle in the tests.
PIN_CENT_NIL_6_3_2 = 1184
PIN_CENT_NIL_5_2_3 = 16281


@dataclass
class RunConfig:
    budget: int = DEFAULT_BUDGET
    samples: int = 10_000
    seed: int = 42
    workers: int = 1

    def __post_init__(self):
        if self.budget < 1:
            raise ValueError("budget must be at least 1")
        if self.samples < 1:
            raise ValueError("samples must be at least 1")
        if self.workers < 1:
            raise ValueError("workers must be at least 1")

    @classmethod
    def resolve_workers(cls, flag=None):
        if flag is not None:
            return flag
        env = os.environ.get(WORKERS_ENV)
        return int(env) if env else 1

    def to_json(self):
        # workers are deliberately absent: they cannot change any result
        return {"budget": self.budget, "samples": self.samples, "seed": self.seed}


@dataclass
class Check:
    name: str
    passed: bool
    values: dict = field(default_factory=dict)

    def to_json(self):
        return {"name": self.name, "passed": self.passed, **self.values}


@dataclass
class SuiteReport:
    name: str
    config: RunConfig
    checks: list = field(default_factory=list)

    @property
    def passed(self):
        return all(c.passed for c in self.checks)

    def add(self, name, passed, **values):
        self.checks.append(Check(name, bool(passed), values))

    def to_json(self):
        return {"suite": self.name, "config": self.config.to_json(), "passed": self.passed,
                "checks": [c.to_json() for c in self.checks]}

    def dumps(self):
        return json.dumps(self.to_json(), indent=2, sort_keys=True) + "\n"


def _kw(cfg):
    return {"budget": cfg.budget, "workers": cfg.workers}


def suite_main_theorem(cfg):
    rep = SuiteReport("main-theorem", cfg)
    for n, expected in ((2, 10), (3, 148), (4, 10816)):
        strat = count_C(n, 2, **_kw(cfg))
        direct = count_C_exhaustive(n, 2, budget=cfg.budget)
        rep.add(f"count_C({n},2)", strat == direct == expected,
                stratified=strat, exhaustive=direct, expected=expected)
    samples = [(q, count_C(4, q, **_kw(cfg))) for q in (2, 4, 8)]
    est = estimate_dim(samples)
    rep.add("dimension of C at n=4", abs(est.dim_estimate - 12) <= 0.35 and est.leading_rounded == 2,
            counts={str(q): c for q, c in samples}, dim_estimate=est.dim_estimate,
            leading_coeff=est.leading_coeff, expected_dim=12, tolerance=0.35, expected_leading=2)
    for n in range(2, 6):
        for i in range(n // 2 + 1):
            r = max_rank_second(n, i, 2, **_kw(cfg))
            ok = r == i if i == n // 2 else r > i
            rep.add(f"max_rank_second({n},{i},2)", ok, value=r,
                    expected=("== i" if i == n // 2 else "> i"), i=i)
    return rep


def suite_equid2(cfg):
    rep = SuiteReport("equid2", cfg)
    families = [((4, 2), (2, 4, 8), (28, 496, 8128), 4, 0.35, 2),
                ((5, 2), (2, 4), (160, 11776), 6, 0.6, 3)]
    for (n, i), qs, expected, dim, tol, lead in families:
        counts = [count_cent_nil(n, i, q, **_kw(cfg)) for q in qs]
        est = estimate_dim(list(zip(qs, counts)))
        rep.add(f"count_cent_nil({n},{i},q)", tuple(counts) == expected,
                qs=list(qs), counts=counts, expected=list(expected))
        rep.add(f"slope and leading coefficient ({n},{i})",
                abs(est.dim_estimate - dim) <= tol and est.leading_rounded == lead,
                dim_estimate=est.dim_estimate, leading_coeff=est.leading_coeff,
                expected_dim=dim, tolerance=tol, expected_leading=lead)
    brute = count_cent_nil(6, 3, 2, method="brute", **_kw(cfg))
    fib = count_cent_nil(6, 3, 2, method="fibered", **_kw(cfg))
    rep.add("count_cent_nil(6,3,2) pin", brute == fib == PIN_CENT_NIL_6_3_2,
            brute=brute, fibered=fib, pinned=PIN_CENT_NIL_6_3_2)
    return rep


def _summary(summands):
    return [{"dim": s.n, "certified": s.certified,
             "class": str(classify_indec(s)) if s.certified else "UNCERTIFIED"} for s in summands]


def suite_components(cfg):
    rep = SuiteReport("components", cfg)
    f2 = make_field(2)

    w = LambdaModule.from_pair(w_pair(f2))
    ds = decompose(w, seed=cfg.seed)
    fp = fingerprint(w)
    rep.add("W indecomposable", len(ds) == 1 and ds[0].certified and str(classify_indec(ds[0])) == "W"
            and (fp.dim, fp.rkX, fp.rkY, fp.rkXY, fp.dimRad, fp.dimSoc, fp.endDim) == (4, 2, 2, 1, 3, 1, 4),
            summands=_summary(ds), fingerprint=fp.to_json())

    ds = decompose(LambdaModule.from_pair(x0_pair(f2, 4)), seed=cfg.seed)
    got = sorted(str(classify_indec(s)) for s in ds if s.certified)
    rep.add("generic X_0 at n=4", len(ds) == 2 and all(s.certified for s in ds)
            and got == ["U(1:0)", "U(1:1)"], summands=_summary(ds))

    zp = LambdaModule.from_pair(x0_plus_pair(f2, 5))
    ds = decompose(zp, seed=cfg.seed)
    end_dim = fingerprint(zp).endDim
    rep.add("generic X_0^+ at n=5", len(ds) == 1 and ds[0].certified and end_dim == 7,
            summands=_summary(ds), end_dim=end_dim, expected_end_dim=7)

    ds = decompose(dualize(zp), seed=cfg.seed)
    rep.add("dual of X_0^+ at n=5", len(ds) == 1 and ds[0].certified
            and str(classify_indec(ds[0])) == "ZMINUS(5)", summands=_summary(ds))

    half = LambdaModule.from_pair(generic_component_rep(ComponentId(5, "X_half"), f2))
    ds = decompose(half, seed=cfg.seed)
    got = sorted(str(classify_indec(s)) for s in ds if s.certified)
    rep.add("X_half at n=5", len(ds) == 2 and all(s.certified for s in ds) and got == ["TRIV", "W"],
            summands=_summary(ds))

    bad, other = [], 0
    for n in range(1, 10):
        for cid in ComponentId.all_for(n):
            # X_0 needs (n - 4j)/2 distinct diagonal values; GF(2) otherwise
            distinct = (n - 4 * cid.j) // 2 if cid.kind == "X_j" else 0
            pair = generic_component_rep(cid, f2 if distinct <= 2 else make_field(2, 2))
            if jordan_type(pair.A) != two_one_partition(n, n // 2):
                bad.append(str(cid))
            ds = decompose(LambdaModule.from_pair(pair), budget=2**22, seed=cfg.seed)
            other += sum(1 for s in ds if not s.certified or classify_indec(s).tag == "OTHER")
    rep.add("component representatives over the dense orbit", not bad, failures=bad)
    rep.add("no OTHER summands in component representatives", other == 0, count=other)

    for n in range(2, 7):
        for q in (2, 4):
            v = gl2_closure_violations(n, q, cfg.samples, seed=cfg.seed + 97 * n + q)
            rep.add(f"GL(2) closure n={n} q={q}", v == 0, trials=cfg.samples, violations=v)
    return rep


def suite_remark_p7(cfg):
    rep = SuiteReport("remark-p7", cfg)
    br = remark7_branch_check(cfg.samples, cfg.seed)
    rep.add("A_0 = 0 implies A^7 = 0", br.zero_a0_violations == 0,
            samples=br.samples, violations=br.zero_a0_violations)
    rep.add("A_0 = e12 branch equivalence", br.branch_violations == 0, samples=br.samples,
            violations=br.branch_violations, branch_true=br.branch_true, branch_false=br.branch_false)
    g = grading_check((7, 5, 2), 7, samples=min(cfg.samples, 1000), seed=cfg.seed)
    rep.add("grading of z(e') for 7.5.2", g.dim_degree0 == 3 and g.toral and g.dim_degree1 == 0
            and g.positive_violations == 0, grading=g.to_json())
    return rep


def suite_gl5_p3(cfg):
    rep = SuiteReport("gl5-p3", cfg)
    c = count_cent_nil(5, 2, 3, **_kw(cfg))
    ratio = c / 3**8
    rep.add("count_cent_nil(5,2,3) pin", c == PIN_CENT_NIL_5_2_3, value=c, pinned=PIN_CENT_NIL_5_2_3)
    rep.add("count / 3^8 in [1, 9]", 1.0 <= ratio <= 9.0, ratio=ratio, lower=1.0, upper=9.0)
    return rep


SUITES = {
    "main-theorem": suite_main_theorem,
    "equid2": suite_equid2,
    "components": suite_components,
    "remark-p7": suite_remark_p7,
    "gl5-p3": suite_gl5_p3,
}


def run_suite(name, config=None):
    """Run one suite (or ``"all"``) and return a :class:`SuiteReport`."""
    config = config or RunConfig()
    if name == "all":
        rep = SuiteReport("all", config)
        for sub, fn in SUITES.items():
            for c in fn(config).checks:
                rep.checks.append(Check(f"{sub}: {c.name}", c.passed, c.values))
        return rep
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; expected one of {sorted(SUITES) + ['all']}")
    return SUITES[name](config)


__all__ = ["RunConfig", "SuiteReport", "Check", "run_suite", "SUITES", "WORKERS_ENV",
           "PIN_CENT_NIL_6_3_2", "PIN_CENT_NIL_5_2_3"]
