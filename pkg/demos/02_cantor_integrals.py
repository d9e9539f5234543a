"""Integrating over a Cantor set.

With alpha = ln2/ln3 the weighted sum over the level-m Cantor partition
converges to the fractal integral.  For f = x the limit is 1/(2 Gamma(1+alpha))
and the error at level m is exactly 3^-m / (2 Gamma(1+alpha)), because each
retained interval is sampled at its left end.
"""
import math

from lfcalc import GridFn, cantor_partition, gamma, lf_integral

alpha = math.log(2) / math.log(3)
norm = gamma(1 + alpha)
limit = 1 / (2 * norm)
print(f"limit 1/(2 Gamma(1+alpha)) = {limit:.15f}\n")
print(" m   value               error      error * 3^m * Gamma")
for m in range(2, 13):
    P = cantor_partition(3, 2, m, 0.0, 1.0)
    value = lf_integral(GridFn.sample(P, lambda x: x))
    err = limit - value
    print(f"{m:>2}   {value:.15f}   {err:.3e}   {err * 3**m * norm:.12f}")

# The same construction keeping 3 of 5 blocks.
alpha35 = math.log(3) / math.log(5)
P = cantor_partition(5, 3, 8, 0.0, 1.0)
value = lf_integral(GridFn.sample(P, lambda x: x * x))
print(f"\nkeep 3 of 5, level 8, f = x^2: {value:.12f}  ({P.size} intervals, alpha = {alpha35:.6f})")
