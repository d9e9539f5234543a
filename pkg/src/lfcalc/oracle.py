"""Extended-precision recomputation of both sides of an inequality.

Works from raw inputs only (interval widths, alpha, sample values,
exponents) in 40-digit ``mpmath`` arithmetic, with its own Gamma and plain
unscaled sums, so it shares no numerical path with the float engine.

Conjugate exponents are re-derived here (``q`` from ``p``, the last ``p_j``
from the others), so the sums are those of an exactly conjugate tuple rather
than of its double rounding, and a negative oracle slack would be a genuine
counterexample.
"""
from __future__ import annotations

import mpmath

from .errors import OracleSizeError

DIGITS = 40
MAX_N = 64


def _sides(family, widths, alpha, values, exps):
    mpf = mpmath.mpf
    a = mpf(alpha)
    norm = mpmath.gamma(1 + a)
    w = [mpf(float(h)) ** a / norm for h in widths]
    fs = [[mpf(float(v)) for v in vals] for vals in values]
    ex = [mpf(float(e)) for e in exps]

    def integral(col):
        return mpmath.fsum(wi * ci for wi, ci in zip(w, col))

    def powint(col, p):
        return integral([c ** p for c in col])

    def norm_p(col, p):
        return powint(col, p) ** (1 / p)

    def ratio(col, p, r):
        return (powint(col, p) / powint(col, r)) ** (1 / (p - r))

    total = [mpmath.fsum(col) for col in zip(*fs)]
    if family in ("Holder", "ReverseHolder"):
        f, g = fs
        p = ex[0]
        q = p / (p - 1)
        return integral([x * y for x, y in zip(f, g)]), norm_p(f, p) * norm_p(g, q)
    if family in ("Minkowski", "ReverseMinkowski", "MinkowskiMulti"):
        p = ex[0]
        return norm_p(total, p), mpmath.fsum(norm_p(col, p) for col in fs)
    if family == "PowerSum":
        p = ex[0]
        return powint(total, p), mpmath.fsum(powint(col, p) for col in fs)
    if family in ("HolderMulti", "ReverseHolderMulti"):
        prod = [mpmath.fprod(col) for col in zip(*fs)]
        ex[-1] = 1 / (1 - mpmath.fsum(1 / p for p in ex[:-1]))
        rhs = mpmath.fprod(norm_p(col, p) for col, p in zip(fs, ex))
        return integral(prod), rhs
    if family in ("RadonRatio", "RadonRatioMulti"):
        p, r = ex
        return ratio(total, p, r), mpmath.fsum(ratio(col, p, r) for col in fs)
    raise ValueError(f"unknown family {family!r}")


def oracle_sides(family, partition, values, exponents):
    """``(lhs, rhs)`` as ``mpmath.mpf`` at 40 significant digits."""
    if partition.size > MAX_N:
        raise OracleSizeError(f"oracle is limited to N <= {MAX_N}, got {partition.size}")
    family = getattr(family, "value", family)
    with mpmath.workdps(DIGITS):
        lhs, rhs = _sides(family, partition.widths, partition.alpha.value, values, exponents)
        return +lhs, +rhs


def oracle_check(report, inputs):
    """Recompute ``report`` from its ``inputs`` (anything with ``partition`` and ``fs``)."""
    values = [f.values for f in inputs.fs]
    return oracle_sides(report.family, inputs.partition, values, report.exponents)
