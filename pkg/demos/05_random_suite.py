"""A randomized suite over every family, then a replay of its tightest case.

Cases are seeded by (suite seed, case index), so any line of the report can
be rebuilt in isolation and compared against the 40-digit recomputation.
"""
import mpmath

from lfcalc import SuiteConfig, oracle_check, replay_case, run_suite

cfg = SuiteConfig(seed=2024, cases=2000)
report = run_suite(cfg)
print(f"{cfg.cases} cases in {report.elapsed:.2f} s, {report.violated} violated, "
      f"min rel_slack {report.min_rel_slack:.2e}\n")
print(f"{'family':<20}{'Holds':>8}{'Equal':>8}{'Violated':>10}")
for family, counts in report.counts.items():
    print(f"{family:<20}{counts['Holds']:>8}{counts['EqualityWithinTol']:>8}{counts['Violated']:>10}")

worst = report.worst
print(f"\ntightest case #{worst['case_index']}: {worst['family']} on {worst['partition']['descriptor']}, "
      f"classes {worst['classes']}, rel_slack {worst['rel_slack']:.2e}")

# Replay on a small partition so the extended-precision check applies.
small = SuiteConfig(seed=2024, cases=50, partitions=("uniform:8", "cantor:3,2,3"))
case, rep = replay_case(2024, 17, small)
lhs, rhs = oracle_check(rep, case)
print(f"\nreplayed case 17 of a small suite ({rep.family.value}, N = {case.partition.size}):")
print(f"  engine lhs {rep.lhs!r}  oracle {mpmath.nstr(lhs, 20)}")
print(f"  engine rhs {rep.rhs!r}  oracle {mpmath.nstr(rhs, 20)}")
