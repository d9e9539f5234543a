"""Seeded random instances for every inequality family, and the suite runner.

Case ``i`` of a suite draws everything from ``numpy.random.default_rng([seed, i])``,
so a case replays from ``(seed, index)`` and the configuration lists alone,
independently of which other cases ran or in what order.
"""
from __future__ import annotations

import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .calculus import FractalPoly, GridFn
from .errors import ConfigError, LfcError
from .inequalities import (
    CONJUGACY_TOL,
    MULTI_FAMILIES,
    ExponentSpec,
    Family,
    Verdict,
    check,
)
from .oracle import oracle_check, oracle_sides  # noqa: F401  (re-exported)
from .partition import Alpha, make_partition, parse_descriptor

CLASSES = ("constant", "fractal-poly-nonneg", "piecewise-random", "exp-of-random")
# classes whose samples are bounded away from zero, usable under negative powers
SAFE_CLASSES = ("constant", "exp-of-random")

LN2_LN3 = math.log(2) / math.log(3)
DEFAULT_ALPHAS = (0.3, 0.5, LN2_LN3, 1.0)
DEFAULT_PARTITIONS = ("uniform:64", "cantor:3,2,8", "random:64")
ALL_FAMILIES = tuple(Family)

FAMILY_REGIME = {
    Family.HOLDER: "A",
    Family.REVERSE_HOLDER: "B",
    Family.HOLDER_MULTI: "C",
    Family.REVERSE_HOLDER_MULTI: "D",
    Family.MINKOWSKI: "A",
    Family.REVERSE_MINKOWSKI: "B",
    Family.MINKOWSKI_MULTI: "AB",
    Family.POWER_SUM: "AB",
    Family.RADON_RATIO: "R",
    Family.RADON_RATIO_MULTI: "R",
}


# -- generators --------------------------------------------------------------

def gen_gridfn(seed, P, cls):
    """Nonnegative samples of a random function of class ``cls`` on ``P``.

    Function classes (``x`` is measured from the left end of the interval):

    * ``constant`` -- a single value in [0.2, 3];
    * ``fractal-poly-nonneg`` -- a fractal polynomial of degree <= 8 with
      coefficients in [0, 1] and the partition's alpha;
    * ``piecewise-random`` -- a step function with 1..8 pieces, values in [0, 2];
    * ``exp-of-random`` -- ``exp(u_j)`` with ``u_j`` uniform in [-3, 3] per
      sample, hence every value lies in [e^-3, e^3].
    """
    rng = np.random.default_rng(seed)
    x = np.asarray(P.eval_points) - P.a
    if cls == "constant":
        vals = np.full(P.size, rng.uniform(0.2, 3.0))
    elif cls == "fractal-poly-nonneg":
        K = int(rng.integers(0, 9))
        poly = FractalPoly(P.alpha, tuple(rng.uniform(0.0, 1.0, K + 1)))
        vals = np.broadcast_to(poly(x), (P.size,))
    elif cls == "piecewise-random":
        pieces = int(rng.integers(1, 9))
        cuts = np.sort(rng.uniform(0.0, P.b - P.a, pieces - 1))
        levels = rng.uniform(0.0, 2.0, pieces)
        vals = levels[np.searchsorted(cuts, x, side="right")]
    elif cls == "exp-of-random":
        vals = np.exp(rng.uniform(-3.0, 3.0, P.size))
    else:
        raise LfcError(f"unknown function class {cls!r}")
    return GridFn(P, vals)


def _simplex(rng, m, floor):
    """``m`` positive shares summing to 1, each at least ``floor``."""
    if m * floor >= 1:
        raise LfcError(f"infeasible simplex: {m} shares with floor {floor}")
    u = floor + (1 - m * floor) * rng.dirichlet(np.ones(m))
    return u


def gen_exponents(seed, regime, m=2):
    """Random exponents in ``regime``; conjugacy sums are re-verified."""
    rng = np.random.default_rng(seed)
    if regime == "A":
        spec = ExponentSpec.pair(rng.uniform(1.05, 8.0))
    elif regime == "B":
        spec = ExponentSpec.pair(rng.uniform(0.05, 0.95))
    elif regime == "C":
        if m < 2:
            raise LfcError("regime C needs m >= 2")
        spec = ExponentSpec.multi(1.0 / _simplex(rng, m, 0.02))
    elif regime == "D":
        if m < 2:
            raise LfcError("regime D needs m >= 2")
        p1 = rng.uniform(0.1, 0.9)
        target = 1.0 - 1.0 / p1
        shares = target * _simplex(rng, m - 1, 0.02)
        spec = ExponentSpec.multi((p1, *(1.0 / shares)))
    elif regime == "R":
        r = rng.uniform(0.1, 0.9)
        p = rng.uniform(1.1, 6.0)
        spec = ExponentSpec.ratio(p, r)
    elif regime == "S":
        spec = ExponentSpec.scalar(rng.uniform(1.05, 8.0) if rng.random() < 0.5
                                   else rng.uniform(0.05, 0.95))
    else:
        raise LfcError(f"unknown regime {regime!r}")
    if spec.regime in "ABCD":
        recip = [1 / v for v in spec.values]
        if abs(math.fsum(recip) - 1) > CONJUGACY_TOL:
            raise LfcError(f"conjugacy lost: sum 1/p = {math.fsum(recip)!r}")
    return spec


# -- suites ------------------------------------------------------------------

@dataclass(frozen=True)
class SuiteConfig:
    seed: int = 0
    cases: int = 10_000
    families: tuple = ALL_FAMILIES
    alphas: tuple = DEFAULT_ALPHAS
    partitions: tuple = DEFAULT_PARTITIONS
    classes: tuple = CLASSES
    m_range: tuple = (2, 4)
    interval: tuple = (0.0, 1.0)

    def __post_init__(self):
        fams = tuple(Family.parse(f) if isinstance(f, str) else f for f in self.families)
        object.__setattr__(self, "families", fams)
        if int(self.cases) != self.cases or self.cases < 1:
            raise ConfigError(f"cases must be a positive integer, got {self.cases!r}")
        if not fams:
            raise ConfigError("at least one family is required")
        if not self.alphas:
            raise ConfigError("at least one alpha is required")
        for a in self.alphas:
            Alpha.explicit(a)
        if not self.partitions:
            raise ConfigError("at least one partition descriptor is required")
        for d in self.partitions:
            try:
                parse_descriptor(d)
            except LfcError as exc:
                raise ConfigError(str(exc)) from None
        if not self.classes or any(c not in CLASSES for c in self.classes):
            raise ConfigError(f"function classes must be a nonempty subset of {CLASSES}")
        lo, hi = self.m_range
        if not 2 <= lo <= hi:
            raise ConfigError(f"m range must satisfy 2 <= lo <= hi, got {self.m_range}")

    def to_json(self):
        return {
            "seed": self.seed,
            "cases": self.cases,
            "families": [f.value for f in self.families],
            "alphas": list(self.alphas),
            "partitions": list(self.partitions),
            "classes": list(self.classes),
            "m_range": list(self.m_range),
            "interval": list(self.interval),
        }


@dataclass(frozen=True, eq=False)
class CaseInputs:
    """Everything needed to evaluate, or re-evaluate, one case."""

    family: Family
    partition: object
    fs: tuple
    exps: ExponentSpec
    classes: tuple
    context: dict = field(default_factory=dict)


@lru_cache(maxsize=256)
def _cached_partition(desc, a, b, alpha):
    return make_partition(desc, a, b, alpha)


def build_case(cfg, index):
    """Instance ``index`` of suite ``cfg``; depends only on ``(cfg, index)``."""
    rng = np.random.default_rng([int(cfg.seed), int(index)])
    family = cfg.families[index % len(cfg.families)]
    alpha = cfg.alphas[int(rng.integers(len(cfg.alphas)))]
    desc = cfg.partitions[int(rng.integers(len(cfg.partitions)))]
    kind, args = parse_descriptor(desc)
    a, b = cfg.interval
    if kind == "random":
        if len(args) == 1:
            desc = f"random:{args[0]},{int(rng.integers(2**31))}"
        P = make_partition(desc, a, b, alpha)
    elif kind == "cantor":
        P = _cached_partition(desc, a, b, None)
    else:
        P = _cached_partition(desc, a, b, alpha)

    regime = FAMILY_REGIME[family]
    if regime == "AB":
        regime = "S"
    if family in MULTI_FAMILIES:
        lo, hi = cfg.m_range
        m = int(rng.integers(lo, hi + 1))
    else:
        m = 2
    exps = gen_exponents(rng.integers(2**63), regime, m)

    # slots raised to a negative power need samples bounded away from zero
    negative = {Family.REVERSE_HOLDER: range(1, 2),
                Family.REVERSE_HOLDER_MULTI: range(1, m)}.get(family, ())
    safe = tuple(c for c in cfg.classes if c in SAFE_CLASSES) or ("exp-of-random",)
    classes, fs = [], []
    for j in range(m):
        pool = safe if j in negative else cfg.classes
        cls = pool[int(rng.integers(len(pool)))]
        classes.append(cls)
        fs.append(gen_gridfn(rng.integers(2**63), P, cls))
    context = {
        "suite_seed": int(cfg.seed),
        "case_index": int(index),
        "family": family.value,
        "alpha": P.alpha.value,
        "exponents": list(exps.values),
        "partition": P.to_json(),
        "classes": classes,
    }
    return CaseInputs(family, P, tuple(fs), exps, tuple(classes), context)


def run_case(cfg, index):
    case = build_case(cfg, index)
    return case, check(case.family, list(case.fs), case.exps, seed=int(cfg.seed))


def replay_case(seed, index, cfg=None):
    """Rebuild and re-evaluate case ``index`` of the suite seeded with ``seed``."""
    cfg = SuiteConfig(seed=seed, cases=max(index + 1, 1)) if cfg is None else cfg
    return run_case(cfg, index)


@dataclass(frozen=True)
class SuiteReport:
    config: dict
    counts: dict
    min_rel_slack: float
    worst: dict
    violations: list
    elapsed: float = field(compare=False, default=0.0)

    @property
    def violated(self):
        return len(self.violations)

    def to_json(self):
        # elapsed time is omitted so identical configs give identical files
        return {
            "config": self.config,
            "counts": self.counts,
            "min_rel_slack": self.min_rel_slack,
            "worst": self.worst,
            "violations": self.violations,
        }


def _summaries(cfg, indices):
    out = []
    for i in indices:
        case, rep = run_case(cfg, i)
        ctx = dict(case.context, lhs=rep.lhs, rhs=rep.rhs, slack=rep.slack,
                   rel_slack=rep.rel_slack, verdict=rep.verdict.value)
        out.append((i, rep.family.value, rep.verdict.value, rep.rel_slack, ctx))
    return out


def _workers():
    try:
        return max(1, int(os.environ.get("LFC_THREADS", "1")))
    except ValueError:
        return 1


def run_suite(cfg, workers=None):
    """Run every case of ``cfg``; the report is ordered by case index."""
    if not isinstance(cfg, SuiteConfig):
        raise ConfigError("run_suite expects a SuiteConfig")
    workers = _workers() if workers is None else max(1, int(workers))
    start = time.perf_counter()
    indices = range(cfg.cases)
    if workers > 1 and cfg.cases >= 2 * workers:
        chunks = [indices[k::workers] for k in range(workers)]
        with ProcessPoolExecutor(workers) as pool:
            parts = pool.map(_summaries, [cfg] * workers, chunks)
            rows = sorted((r for part in parts for r in part), key=lambda r: r[0])
    else:
        rows = _summaries(cfg, indices)

    counts = {f.value: {v.value: 0 for v in Verdict} for f in cfg.families}
    worst, min_rel, violations = None, math.inf, []
    for i, fam, verdict, rel, ctx in rows:
        counts[fam][verdict] += 1
        if rel < min_rel:
            min_rel, worst = rel, ctx
        if verdict == Verdict.VIOLATED.value:
            violations.append(ctx)
    return SuiteReport(cfg.to_json(), counts, min_rel, worst, violations,
                       time.perf_counter() - start)
