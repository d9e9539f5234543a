"""The derivative as a limit of difference quotients.

Gamma(1+alpha) (f(x0+h) - f(x0)) / h^alpha is printed for shrinking h.  The
quotient is exact for x^alpha at the origin, converges linearly in h for a
smooth function at alpha = 1, and drifts to zero when alpha is smaller than the
local order of the function.
"""
import math

from lfcalc import gamma, lf_derivative_est

alpha = math.log(2) / math.log(3)
est, _ = lf_derivative_est(lambda x: x**alpha, 0.0, alpha)
print(f"x^alpha at 0, alpha = ln2/ln3: {est:.15f}  (Gamma(1+alpha) = {gamma(1 + alpha):.15f})")

_, qs = lf_derivative_est(lambda x: x * x, 0.7, 1.0, h0=0.1, ratio=0.5, steps=12)
print("\nx^2 at 0.7, alpha = 1:")
for i, q in enumerate(qs):
    print(f"  h = {0.1 * 0.5**i:.2e}   quotient {q:.12f}   gap {q - 1.4:.2e}")

_, qs = lf_derivative_est(lambda x: x, 0.5, 0.5, h0=0.1, ratio=0.1, steps=8)
print("\nx at 0.5 with alpha = 0.5 (the quotient behaves like h^0.5):")
for i, q in enumerate(qs):
    print(f"  h = {0.1 * 0.1**i:.0e}   quotient {q:.3e}")
