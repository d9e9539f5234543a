"""Where the weights come from.

Every partition interval of width h carries the weight h^alpha / Gamma(1 + alpha).
This script checks the Gamma kernel against a few closed forms and then
watches the weights of a Cantor partition add up to the same total at every
refinement level.
"""
import math

from lfcalc import cantor_partition, gamma, uniform_partition

print("Gamma at a few points")
for x, exact, label in [(1.0, 1.0, "1"), (5.0, 24.0, "4!"), (0.5, math.sqrt(math.pi), "sqrt(pi)"),
                        (10.5, math.factorial(20) * math.sqrt(math.pi) / (4**10 * math.factorial(10)),
                         "(20)! sqrt(pi) / (4^10 10!)")]:
    got = gamma(x)
    print(f"  Gamma({x:>4}) = {got:.17g}   vs {label:<28} rel err {abs(got - exact) / exact:.1e}")

alpha = math.log(2) / math.log(3)
print(f"\nCantor partitions of [0, 1], alpha = ln2/ln3 = {alpha:.15f}")
print(f"  expected total weight 1/Gamma(1+alpha) = {1 / gamma(1 + alpha):.15f}")
for m in (1, 4, 8, 12):
    P = cantor_partition(3, 2, m, 0.0, 1.0)
    print(f"  level {m:>2}: {P.size:>5} intervals, total weight {P.total_weight:.15f}")

# A uniform partition only keeps its total weight when alpha = 1.
print("\nUniform partitions of [0, 1] with alpha = 0.5")
for N in (4, 16, 64, 256):
    P = uniform_partition(0.0, 1.0, N, 0.5)
    print(f"  N = {N:>3}: total weight {P.total_weight:10.4f}  (grows like sqrt(N))")
