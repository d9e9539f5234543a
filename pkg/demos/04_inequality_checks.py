"""Single inequality checks, and when they are tight.

Each report gives both sides, the signed slack (nonnegative when the
inequality holds) and a verdict.  The Hoelder pair is tight when f^p is
proportional to g^q; plain proportionality f = c g is enough only at p = 2.
"""
import math

from lfcalc import ExponentSpec, GridFn, check_multi, check_pair, random_partition

P = random_partition(0.0, 1.0, 200, seed=1, alpha=math.log(2) / math.log(3))
f = GridFn.sample(P, lambda x: 1 + x)
g = GridFn.sample(P, lambda x: 2 - x * x)


def show(title, rep):
    print(f"{title:<34} lhs {rep.lhs:10.6f}  rhs {rep.rhs:10.6f}  rel_slack {rep.rel_slack:+.2e}  "
          f"{rep.verdict.value}")


show("Holder p=3", check_pair("Holder", f, g, ExponentSpec.pair(3)))
show("ReverseHolder p=0.4", check_pair("ReverseHolder", f, g, ExponentSpec.pair(0.4)))
show("Minkowski p=3", check_pair("Minkowski", f, g, ExponentSpec.scalar(3)))
show("ReverseMinkowski p=0.4", check_pair("ReverseMinkowski", f, g, ExponentSpec.scalar(0.4)))
show("RadonRatio p=3 r=0.5", check_pair("RadonRatio", f, g, ExponentSpec.ratio(3, 0.5)))
show("HolderMulti p=(3,3,3)", check_multi("HolderMulti", [f, g, f], ExponentSpec.multi([3, 3, 3])))
show("PowerSum p=2.5", check_multi("PowerSum", [f, g, f], ExponentSpec.scalar(2.5)))

print("\nTightness of the Hoelder pair")
for p in (2.0, 3.0):
    q = p / (p - 1)
    show(f"  f = 3 g, p = {p:g}", check_pair("Holder", GridFn(P, 3 * g.values), g, ExponentSpec.pair(p)))
    show(f"  f = 3 g^(q/p), p = {p:g}",
         check_pair("Holder", GridFn(P, 3 * g.values ** (q / p)), g, ExponentSpec.pair(p)))
show("Minkowski f = 3 g, p = 3", check_pair("Minkowski", GridFn(P, 3 * g.values), g, ExponentSpec.scalar(3)))
