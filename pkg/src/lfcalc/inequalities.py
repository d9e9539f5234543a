"""Both sides of the Hoelder / Minkowski / Radon-type inequalities on a finite partition.

Every integral ``(1/Gamma(1+alpha)) int h (dx)^alpha`` is realized by
``lf_integral``; with positive weights each inequality is its discrete
weighted form and must hold up to rounding.  A report orients the slack so
that "holds" means ``slack >= 0``.

Two statements are implemented in their standard form rather than as
printed: the Minkowski pair uses the exponent ``p`` on both terms, and the
strict ``<``/``>`` of the power-sum and multi-ratio corollaries is checked
non-strictly (proportional or disjointly supported inputs give equality).
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateError, LfcError, PartitionMismatchError, PositivityError, RegimeError
from .partition import compensated_sum

CONJUGACY_TOL = 1e-12
VIOLATION_TOL = 1e-9
EQUALITY_TOL = 1e-10
POSITIVITY_FLOOR = 1e-12
REL_EPS = 1e-300


class Family(enum.Enum):
    HOLDER = "Holder"
    REVERSE_HOLDER = "ReverseHolder"
    HOLDER_MULTI = "HolderMulti"
    REVERSE_HOLDER_MULTI = "ReverseHolderMulti"
    MINKOWSKI = "Minkowski"
    REVERSE_MINKOWSKI = "ReverseMinkowski"
    MINKOWSKI_MULTI = "MinkowskiMulti"
    POWER_SUM = "PowerSum"
    RADON_RATIO = "RadonRatio"
    RADON_RATIO_MULTI = "RadonRatioMulti"

    @property
    def cli_name(self):
        return _CLI_NAMES[self]

    @classmethod
    def parse(cls, name):
        """Accept the tag (``ReverseHolder``) or the CLI spelling (``reverse-holder``)."""
        for fam in cls:
            if name in (fam.value, fam.cli_name):
                return fam
        raise LfcError(f"unknown family {name!r}")

    @property
    def is_pair(self):
        return self in PAIR_FAMILIES


_CLI_NAMES = {
    Family.HOLDER: "holder",
    Family.REVERSE_HOLDER: "reverse-holder",
    Family.HOLDER_MULTI: "holder-multi",
    Family.REVERSE_HOLDER_MULTI: "reverse-holder-multi",
    Family.MINKOWSKI: "minkowski",
    Family.REVERSE_MINKOWSKI: "reverse-minkowski",
    Family.MINKOWSKI_MULTI: "minkowski-multi",
    Family.POWER_SUM: "power-sum",
    Family.RADON_RATIO: "radon-ratio",
    Family.RADON_RATIO_MULTI: "radon-ratio-multi",
}

PAIR_FAMILIES = (Family.HOLDER, Family.REVERSE_HOLDER, Family.MINKOWSKI,
                 Family.REVERSE_MINKOWSKI, Family.RADON_RATIO)
MULTI_FAMILIES = (Family.HOLDER_MULTI, Family.REVERSE_HOLDER_MULTI, Family.MINKOWSKI_MULTI,
                  Family.POWER_SUM, Family.RADON_RATIO_MULTI)


class Verdict(str, enum.Enum):
    HOLDS = "Holds"
    EQUALITY = "EqualityWithinTol"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class ExponentSpec:
    """Exponents of one check, tagged by regime.

    ``A``/``B``: pair ``(p, q)``, ``p > 1`` or ``0 < p < 1``.  ``C``/``D``:
    tuple with reciprocal sum 1, all above 1 or ``0 < p_1 < 1`` with the rest
    negative.  ``R``: ``(p, r)`` with ``0 < r < 1 < p``.  ``S``: a single
    positive ``p != 1`` for the multi-function sum families.
    """

    regime: str
    values: tuple

    @classmethod
    def pair(cls, p, q=None):
        p = float(p)
        if not (p > 0) or p == 1 or not math.isfinite(p):
            raise RegimeError(f"pair exponent p must be positive and != 1, got {p!r}")
        conj = p / (p - 1)
        if q is None:
            q = conj
        q = float(q)
        if abs(1 / p + 1 / q - 1) > CONJUGACY_TOL:
            raise RegimeError(f"1/p + 1/q = {1 / p + 1 / q!r}, not 1")
        return cls("A" if p > 1 else "B", (p, q))

    @classmethod
    def multi(cls, ps):
        ps = tuple(float(v) for v in ps)
        if len(ps) < 2:
            raise RegimeError("an exponent tuple needs at least two entries")
        if any(v == 0 or not math.isfinite(v) for v in ps):
            raise RegimeError("exponents must be finite and nonzero")
        total = math.fsum(1 / v for v in ps)
        if abs(total - 1) > CONJUGACY_TOL:
            raise RegimeError(f"sum of 1/p_j = {total!r}, not 1")
        if all(v > 1 for v in ps):
            return cls("C", ps)
        if 0 < ps[0] < 1 and all(v < 0 for v in ps[1:]):
            return cls("D", ps)
        raise RegimeError(f"exponents {ps} fit neither all p_j > 1 nor 0 < p_1 < 1, p_j < 0 (j >= 2)")

    @classmethod
    def scalar(cls, p):
        p = float(p)
        if not p > 0 or p == 1 or not math.isfinite(p):
            raise RegimeError(f"p must be positive and != 1, got {p!r}")
        return cls("S", (p,))

    @classmethod
    def ratio(cls, p, r):
        p, r = float(p), float(r)
        if not (0 < r < 1 < p) or not math.isfinite(p):
            raise RegimeError(f"ratio exponents need 0 < r < 1 < p, got p={p!r}, r={r!r}")
        return cls("R", (p, r))

    @property
    def p(self):
        return self.values[0]


@dataclass(frozen=True)
class IneqReport:
    family: Family
    lhs: float
    rhs: float
    slack: float
    rel_slack: float
    verdict: Verdict
    alpha: float
    exponents: tuple
    partition: dict = field(default_factory=dict)
    seed: object = None

    def to_json(self):
        return {
            "family": self.family.value,
            "alpha": self.alpha,
            "exponents": list(self.exponents),
            "partition": self.partition,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "slack": self.slack,
            "rel_slack": self.rel_slack,
            "verdict": self.verdict.value,
            "seed": self.seed,
        }


# <= families put the larger quantity on the right
_LE = "le"
_GE = "ge"


def classify(rel_slack):
    if rel_slack < -VIOLATION_TOL:
        return Verdict.VIOLATED
    if abs(rel_slack) <= EQUALITY_TOL:
        return Verdict.EQUALITY
    return Verdict.HOLDS


def make_report(family, lhs, rhs, direction, exps, partition, seed=None):
    slack = rhs - lhs if direction == _LE else lhs - rhs
    rel = slack / max(abs(lhs), abs(rhs), REL_EPS)
    return IneqReport(family, float(lhs), float(rhs), float(slack), float(rel), classify(rel),
                      partition.alpha.value, tuple(exps.values), partition.to_json(), seed)


# -- weighted integrals ------------------------------------------------------

def _integral(values, w):
    return compensated_sum(values * w)


def _power_norm(v, w, p):
    """``(sum w v**p)**(1/p)`` with ``v`` rescaled so no power overflows."""
    if p > 0:
        s = float(v.max())
        if s == 0.0:
            return 0.0
    else:
        s = float(v.min())
    t = _integral((v / s) ** p, w)
    return s * t ** (1.0 / p)


def _power_integral(v, w, p):
    """``sum w v**p``."""
    return _integral(v ** p, w)


def _ratio_mean(v, w, p, r, name):
    """``(int v^p / int v^r)**(1/(p-r))``, scaled by ``max v``."""
    s = float(v.max())
    if s == 0.0:
        raise DegenerateError(f"{name} has zero r-integral")
    u = v / s
    den = _integral(u ** r, w)
    if not den > 0:
        raise DegenerateError(f"{name} has zero r-integral")
    return s * (_integral(u ** p, w) / den) ** (1.0 / (p - r))


def _require_floor(v, name):
    bad = np.flatnonzero(v < POSITIVITY_FLOOR)
    if bad.size:
        i = int(bad[0])
        raise PositivityError(
            f"{name} is raised to a negative power but {name}[{i}] = {v[i]!r} < {POSITIVITY_FLOOR}",
            index=i, function=name)


def _same_partition(P, Q):
    return P is Q or (P.size == Q.size and P.descriptor == Q.descriptor and P.alpha == Q.alpha
                      and np.array_equal(P.weights, Q.weights)
                      and np.array_equal(P.lefts, Q.lefts))


def _shared_partition(fs, partition=None):
    P = fs[0].partition if partition is None else partition
    if not all(_same_partition(P, f.partition) for f in fs):
        raise PartitionMismatchError("all functions must be sampled on the same partition")
    return P


def _regime_of_scalar(exps):
    # a bare p stands in for the pair (p, p/(p-1))
    if exps.regime == "S":
        return "A" if exps.p > 1 else "B"
    return exps.regime


_REGIMES = {
    Family.HOLDER: "A",
    Family.REVERSE_HOLDER: "B",
    Family.MINKOWSKI: "A",
    Family.REVERSE_MINKOWSKI: "B",
    Family.RADON_RATIO: "R",
    Family.HOLDER_MULTI: "C",
    Family.REVERSE_HOLDER_MULTI: "D",
    Family.MINKOWSKI_MULTI: "AB",
    Family.POWER_SUM: "AB",
    Family.RADON_RATIO_MULTI: "R",
}
_REGIME_TEXT = {
    "A": "p > 1", "B": "0 < p < 1", "C": "all p_j > 1 with sum 1/p_j = 1",
    "D": "0 < p_1 < 1 and p_j < 0 (j >= 2) with sum 1/p_j = 1",
    "R": "0 < r < 1 < p", "AB": "a scalar p > 0, p != 1",
}


def validate_regime(family, exps):
    """Raise ``RegimeError`` unless ``exps`` belongs to the regime ``family`` needs."""
    need = _REGIMES[family]
    have = _regime_of_scalar(exps)
    if need == "AB":
        ok = exps.regime in ("S", "A", "B")
    else:
        ok = have == need
    if not ok:
        raise RegimeError(f"regime mismatch: {family.value} needs {_REGIME_TEXT[need]}, "
                          f"got exponents {exps.values}")


def check_pair(family, f, g, exps, partition=None, seed=None):
    """Evaluate a two-function inequality and classify it."""
    family = Family.parse(family) if isinstance(family, str) else family
    if family not in PAIR_FAMILIES:
        raise LfcError(f"{family.value} is not a two-function family")
    P = _shared_partition([f, g], partition)
    validate_regime(family, exps)
    w = P.weights
    fv, gv = f.values, g.values

    if family in (Family.HOLDER, Family.REVERSE_HOLDER):
        p, q = exps.values if exps.regime != "S" else (exps.p, exps.p / (exps.p - 1))
        if q < 0:
            _require_floor(gv, "g")
        lhs = _integral(fv * gv, w)
        rhs = _power_norm(fv, w, p) * _power_norm(gv, w, q)
        direction = _LE if family is Family.HOLDER else _GE
    elif family in (Family.MINKOWSKI, Family.REVERSE_MINKOWSKI):
        p = exps.p
        lhs = _power_norm(fv + gv, w, p)
        rhs = _power_norm(fv, w, p) + _power_norm(gv, w, p)
        direction = _LE if family is Family.MINKOWSKI else _GE
    else:
        p, r = exps.values
        lhs = _ratio_mean(fv + gv, w, p, r, "f+g")
        rhs = _ratio_mean(fv, w, p, r, "f") + _ratio_mean(gv, w, p, r, "g")
        direction = _LE
    return make_report(family, lhs, rhs, direction, exps, P, seed)


def check_multi(family, fs, exps, partition=None, seed=None):
    """Evaluate an ``m``-function inequality (``m >= 2``) and classify it."""
    family = Family.parse(family) if isinstance(family, str) else family
    if family not in MULTI_FAMILIES:
        raise LfcError(f"{family.value} is not a multi-function family")
    fs = list(fs)
    if len(fs) < 2:
        raise LfcError(f"{family.value} needs at least two functions, got {len(fs)}")
    P = _shared_partition(fs, partition)
    validate_regime(family, exps)
    w = P.weights
    vals = [f.values for f in fs]

    if family in (Family.HOLDER_MULTI, Family.REVERSE_HOLDER_MULTI):
        need = _REGIMES[family]
        if len(exps.values) != len(fs):
            raise LfcError(f"{len(fs)} functions but {len(exps.values)} exponents")
        if need == "D":
            for j, v in enumerate(vals[1:], start=2):
                _require_floor(v, f"f_{j}")
        lhs = _integral(np.prod(vals, axis=0), w)
        rhs = math.prod(_power_norm(v, w, p) for v, p in zip(vals, exps.values))
        direction = _LE if need == "C" else _GE
    elif family in (Family.MINKOWSKI_MULTI, Family.POWER_SUM):
        p = exps.p
        total = np.sum(vals, axis=0)
        if family is Family.MINKOWSKI_MULTI:
            lhs = _power_norm(total, w, p)
            rhs = math.fsum(_power_norm(v, w, p) for v in vals)
            direction = _LE if p > 1 else _GE
        else:
            lhs = _power_integral(total, w, p)
            rhs = math.fsum(_power_integral(v, w, p) for v in vals)
            direction = _GE if p > 1 else _LE
    else:
        p, r = exps.values
        lhs = _ratio_mean(np.sum(vals, axis=0), w, p, r, "sum f_j")
        rhs = math.fsum(_ratio_mean(v, w, p, r, f"f_{j}") for j, v in enumerate(vals, start=1))
        direction = _LE
    return make_report(family, lhs, rhs, direction, exps, P, seed)


def check(family, fs, exps, seed=None):
    """Dispatch on arity: pair families take exactly two functions."""
    family = Family.parse(family) if isinstance(family, str) else family
    if family.is_pair:
        if len(fs) != 2:
            raise LfcError(f"{family.value} takes exactly two functions, got {len(fs)}")
        return check_pair(family, fs[0], fs[1], exps, seed=seed)
    return check_multi(family, fs, exps, seed=seed)


def power_sum_strict_expected(fs):
    """True when two of the ``f_j`` are positive at a common sample point.

    Only then is the power-sum inequality strict; otherwise both sides agree.
    """
    positive = np.sum([np.asarray(f.values) > 0 for f in fs], axis=0)
    return bool(np.any(positive >= 2))


def proportionality_check(f, g, tol):
    """Return ``lambda`` if ``f = lambda g`` up to ``tol * max|f|``, else ``None``.

    ``lambda`` minimizes the weighted squared deviation ``sum w (f - lambda g)**2``.
    """
    P = _shared_partition([f, g])
    fv, gv, w = f.values, g.values, P.weights
    if not np.any(gv != 0):
        raise LfcError("g is identically zero")
    lam = _integral(fv * gv, w) / _integral(gv * gv, w)
    dev = float(np.max(np.abs(fv - lam * gv)))
    if dev <= tol * float(np.max(np.abs(fv))):
        return lam
    return None
