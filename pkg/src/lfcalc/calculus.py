"""Local fractional integral and derivative at finite resolution.

``lf_integral`` is the positive weighted sum over a partition.  The derivative
estimator reports the whole sequence of one-sided difference quotients; it
does not decide whether they converge.

``FractalPoly`` is the exact reference class: finite sums of ``x**(k*alpha)``
on which integration and differentiation act on coefficients through Gamma
ratios.  For ``alpha < 1`` these operational rules and the pointwise quotient
disagree at ``x0 > 0`` (the quotient of a smooth function tends to 0 there),
so the two are only compared at ``x0 = 0`` on the fractal basis, or at
``alpha = 1``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import DegreeOverflowError, DomainError, EvaluationError, LfcError
from .gamma import gamma
from .partition import Alpha, Partition, as_alpha, compensated_sum

MAX_DEGREE = 32


@dataclass(frozen=True, eq=False)
class GridFn:
    """Nonnegative samples of a function at a partition's evaluation points."""

    partition: Partition
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        v = np.array(self.values, dtype=float)
        if v.shape != (self.partition.size,):
            raise LfcError(f"expected {self.partition.size} samples, got shape {v.shape}")
        if not np.all(np.isfinite(v)):
            raise LfcError(f"non-finite sample at index {int(np.argmin(np.isfinite(v)))}")
        if np.any(v < 0):
            raise LfcError(f"negative sample at index {int(np.argmax(v < 0))}")
        v.flags.writeable = False
        object.__setattr__(self, "values", v)

    @classmethod
    def sample(cls, partition, func):
        """Evaluate ``func`` (vectorized over an array of points) and take ``abs``."""
        vals = np.abs(np.asarray(func(partition.eval_points), dtype=float))
        return cls(partition, np.broadcast_to(vals, (partition.size,)))

    def __len__(self):
        return len(self.values)


def lf_integral(f):
    """Sum of ``f(t_j) * (dt_j)**alpha / Gamma(1 + alpha)`` over the partition."""
    return compensated_sum(f.values * f.partition.weights)


def lf_derivative_est(f, x0, alpha, h0=1e-2, ratio=0.5, steps=20):
    """One-sided quotients ``Gamma(1+alpha) * (f(x0+h) - f(x0)) / h**alpha``.

    Steps are ``h_i = h0 * ratio**i`` for ``i < steps``.  Returns the last
    quotient and the full list so callers can judge convergence themselves.
    """
    alpha = as_alpha(alpha)
    if not h0 > 0:
        raise LfcError(f"h0 must be positive, got {h0!r}")
    if not 0 < ratio < 1:
        raise LfcError(f"ratio must lie in (0, 1), got {ratio!r}")
    if int(steps) != steps or steps < 1:
        raise LfcError(f"steps must be a positive integer, got {steps!r}")
    g = alpha.gamma1p
    f0 = float(f(x0))
    if not math.isfinite(f0):
        raise EvaluationError(f"f({x0!r}) is not finite", h=0.0)
    quotients = []
    for i in range(int(steps)):
        h = h0 * ratio ** i
        fh = float(f(x0 + h))
        if not math.isfinite(fh):
            raise EvaluationError(f"f({x0 + h!r}) is not finite at step h={h!r}", h=h)
        quotients.append(g * (fh - f0) / h ** alpha.value)
    return quotients[-1], quotients


@dataclass(frozen=True)
class FractalPoly:
    """``sum_k coeffs[k] * x**(k*alpha)``."""

    alpha: Alpha
    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "alpha", as_alpha(self.alpha))
        c = tuple(float(v) for v in self.coeffs)
        if not c:
            c = (0.0,)
        if len(c) - 1 > MAX_DEGREE:
            raise DegreeOverflowError(f"degree {len(c) - 1} exceeds {MAX_DEGREE}")
        object.__setattr__(self, "coeffs", c)

    @property
    def degree(self):
        return len(self.coeffs) - 1

    def __call__(self, x):
        return fp_eval(self, x)


def fp_eval(p, x):
    x_arr = np.asarray(x, dtype=float)
    if np.any(x_arr < 0):
        raise DomainError("fractal polynomials are evaluated at x >= 0 only")
    a = p.alpha.value
    out = sum(c * x_arr ** (k * a) for k, c in enumerate(p.coeffs))
    return float(out) if np.ndim(out) == 0 else out


def fp_integral(p):
    """Antiderivative from 0: ``c_k -> c_k Gamma(1+k a) / Gamma(1+(k+1) a)``, degree + 1."""
    if p.degree + 1 > MAX_DEGREE:
        raise DegreeOverflowError(f"integral of degree {p.degree} exceeds {MAX_DEGREE}")
    a = p.alpha.value
    new = [0.0] + [c * gamma(1 + k * a) / gamma(1 + (k + 1) * a)
                   for k, c in enumerate(p.coeffs)]
    return FractalPoly(p.alpha, tuple(new))


def fp_derivative(p):
    """``c_k -> c_k Gamma(1+k a) / Gamma(1+(k-1) a)`` for ``k >= 1``; constants vanish."""
    a = p.alpha.value
    new = [c * gamma(1 + k * a) / gamma(1 + (k - 1) * a)
           for k, c in enumerate(p.coeffs) if k >= 1]
    return FractalPoly(p.alpha, tuple(new) or (0.0,))
