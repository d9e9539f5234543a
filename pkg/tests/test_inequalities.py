import math

import jsonschema
import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lfcalc.calculus import GridFn
from lfcalc.errors import DegenerateError, LfcError, PartitionMismatchError, PositivityError, RegimeError
from lfcalc.harness import gen_exponents, gen_gridfn
from lfcalc.inequalities import (
    ExponentSpec,
    Family,
    Verdict,
    check,
    check_multi,
    check_pair,
    classify,
    power_sum_strict_expected,
    proportionality_check,
)
from lfcalc.partition import cantor_partition, random_partition, uniform_partition

LN2_LN3 = math.log(2) / math.log(3)


def grid(P, func):
    return GridFn.sample(P, func)


def const(P, c=1.0):
    return GridFn(P, np.full(P.size, c))


@pytest.fixture(params=["uniform", "cantor", "random"])
def partition(request):
    return {
        "uniform": uniform_partition(0, 1, 32, 0.5),
        "cantor": cantor_partition(3, 2, 5, 0, 1),
        "random": random_partition(0, 1, 40, 9, 0.3),
    }[request.param]


# -- exponent specs -----------------------------------------------------------

def test_exponent_spec_regimes():
    assert ExponentSpec.pair(2).values == (2.0, 2.0)
    assert ExponentSpec.pair(2).regime == "A"
    assert ExponentSpec.pair(0.5) == ExponentSpec("B", (0.5, -1.0))
    assert ExponentSpec.multi([3, 3, 3]).regime == "C"
    assert ExponentSpec.multi([0.5, -2, -2]).regime == "D"
    assert ExponentSpec.ratio(2, 0.5).regime == "R"
    with pytest.raises(RegimeError):
        ExponentSpec.pair(2, 3)
    with pytest.raises(RegimeError):
        ExponentSpec.pair(1)
    with pytest.raises(RegimeError):
        ExponentSpec.multi([2, 3])
    with pytest.raises(RegimeError):
        ExponentSpec.multi([-1, 0.5])
    with pytest.raises(RegimeError):
        ExponentSpec.ratio(0.5, 2)


def test_classify_thresholds():
    assert classify(0.0) is Verdict.EQUALITY
    assert classify(1e-10) is Verdict.EQUALITY
    assert classify(-1e-10) is Verdict.EQUALITY
    assert classify(2e-10) is Verdict.HOLDS
    assert classify(-5e-10) is Verdict.HOLDS
    assert classify(-1.01e-9) is Verdict.VIOLATED


# -- worked examples -------------------------------------------------------------

def test_holder_constants(partition):
    rep = check_pair(Family.HOLDER, const(partition), const(partition), ExponentSpec.pair(2), partition)
    W = partition.total_weight
    assert rep.lhs == pytest.approx(W, rel=1e-15)
    assert rep.rhs == pytest.approx(W, rel=1e-15)
    assert rep.verdict is Verdict.EQUALITY


def test_holder_matches_direct_sums():
    P = uniform_partition(0, 1, 100, 1.0)
    f, g = grid(P, lambda x: x), grid(P, lambda x: 1 - x)
    rep = check_pair("Holder", f, g, ExponentSpec.pair(2))
    xs = [j / 100 for j in range(100)]
    lhs = math.fsum(0.01 * x * (1 - x) for x in xs)
    rhs = math.sqrt(math.fsum(0.01 * x * x for x in xs)) * math.sqrt(
        math.fsum(0.01 * (1 - x) ** 2 for x in xs))
    assert rep.lhs == pytest.approx(lhs, rel=1e-12)
    assert rep.rhs == pytest.approx(rhs, rel=1e-12)
    # 40-digit values of the same two sums
    assert rep.lhs == pytest.approx(0.16665, rel=1e-12)
    assert rep.rhs == pytest.approx(0.3333124997656103505645025197637421274996, rel=1e-12)
    assert rep.slack >= 0 and rep.verdict is Verdict.HOLDS


def test_reverse_holder_example():
    P = uniform_partition(0, 1, 10, 1.0)
    rep = check_pair("ReverseHolder", grid(P, lambda x: x + 1), const(P), ExponentSpec.pair(0.5))
    assert rep.exponents == (0.5, -1.0)
    assert rep.lhs == pytest.approx(1.45, rel=1e-13)
    assert rep.rhs == pytest.approx(1.435488520676391962871793732467736471504, rel=1e-13)
    assert rep.lhs >= rep.rhs and rep.verdict is Verdict.HOLDS


def test_minkowski_proportional(partition):
    rng = np.random.default_rng(1)
    f = GridFn(partition, rng.uniform(0, 3, partition.size))
    g = GridFn(partition, 2 * f.values)
    for p, fam in ((3.0, Family.MINKOWSKI), (0.4, Family.REVERSE_MINKOWSKI)):
        rep = check_pair(fam, f, g, ExponentSpec.scalar(p))
        assert rep.verdict is Verdict.EQUALITY


def test_radon_constants(partition):
    rep = check_pair("RadonRatio", const(partition), const(partition), ExponentSpec.ratio(2, 0.5))
    assert rep.lhs == pytest.approx(2.0, rel=1e-14)
    assert rep.rhs == pytest.approx(2.0, rel=1e-14)
    assert rep.verdict is Verdict.EQUALITY


def test_radon_proportional(partition):
    rng = np.random.default_rng(2)
    f = GridFn(partition, rng.uniform(0.1, 3, partition.size))
    rep = check_pair("RadonRatio", f, GridFn(partition, 0.3 * f.values), ExponentSpec.ratio(3.5, 0.2))
    assert rep.verdict is Verdict.EQUALITY


def test_holder_multi_constants(partition):
    fs = [const(partition)] * 3
    rep = check_multi("HolderMulti", fs, ExponentSpec.multi([3, 3, 3]))
    assert rep.lhs == pytest.approx(partition.total_weight, rel=1e-14)
    assert rep.verdict is Verdict.EQUALITY


def test_power_sum_constants(partition):
    rep = check_multi("PowerSum", [const(partition), const(partition)], ExponentSpec.scalar(2))
    W = partition.total_weight
    assert rep.lhs == pytest.approx(4 * W) and rep.rhs == pytest.approx(2 * W)
    assert rep.rel_slack == pytest.approx(0.5, rel=1e-14)
    assert rep.verdict is Verdict.HOLDS


def test_power_sum_reversed_below_one(partition):
    rep = check_multi("PowerSum", [const(partition), const(partition)], ExponentSpec.scalar(0.5))
    assert rep.lhs < rep.rhs and rep.verdict is Verdict.HOLDS


def test_minkowski_multi_proportional(partition):
    rng = np.random.default_rng(3)
    base = rng.uniform(0, 2, partition.size)
    fs = [GridFn(partition, c * base) for c in rng.uniform(0.1, 5, 4)]
    assert check_multi("MinkowskiMulti", fs, ExponentSpec.scalar(3)).verdict is Verdict.EQUALITY


def test_reverse_holder_multi_random(partition):
    for seed in range(50):
        m = 2 + seed % 3
        exps = gen_exponents(seed, "D", m)
        fs = [gen_gridfn([seed, 0], partition, "piecewise-random")]
        fs += [gen_gridfn([seed, j], partition, "exp-of-random") for j in range(1, m)]
        rep = check_multi("ReverseHolderMulti", fs, exps)
        assert rep.rel_slack >= -1e-9


def test_reverse_holder_multi_against_mpmath():
    P = random_partition(0, 1, 12, 4, 0.5)
    exps = ExponentSpec.multi([0.5, -2.0, -2.0])
    rng = np.random.default_rng(8)
    vals = [rng.uniform(0.5, 2, 12) for _ in range(3)]
    rep = check_multi("ReverseHolderMulti", [GridFn(P, v) for v in vals], exps)
    with mpmath.workdps(40):
        w = [mpmath.mpf(float(x)) for x in P.weights]
        lhs = mpmath.fsum(wi * mpmath.mpf(a) * b * c for wi, a, b, c in zip(w, *vals))
        rhs = mpmath.mpf(1)
        for v, p in zip(vals, exps.values):
            rhs *= mpmath.fsum(wi * mpmath.mpf(x) ** p for wi, x in zip(w, v)) ** (1 / mpmath.mpf(p))
    assert rep.lhs == pytest.approx(float(lhs), rel=1e-13)
    assert rep.rhs == pytest.approx(float(rhs), rel=1e-13)
    assert rep.verdict is Verdict.HOLDS


def test_extreme_negative_exponents_do_not_overflow():
    P = uniform_partition(0, 1, 16, 0.5)
    # reciprocals 10, -8.98, -0.02; huge negative powers of samples up to e^3
    exps = ExponentSpec.multi([0.1, -1 / 8.98, -1 / 0.02])
    vals = [np.exp(np.linspace(-3, 3, 16)) for _ in range(3)]
    rep = check_multi("ReverseHolderMulti", [GridFn(P, v) for v in vals], exps)
    assert math.isfinite(rep.lhs) and math.isfinite(rep.rhs)
    assert rep.rel_slack >= -1e-9


# -- errors ----------------------------------------------------------------------

def test_regime_mismatch():
    P = uniform_partition(0, 1, 8, 1.0)
    f = const(P)
    with pytest.raises(RegimeError):
        check_pair("Holder", f, f, ExponentSpec.pair(0.5))
    with pytest.raises(RegimeError):
        check_pair("ReverseMinkowski", f, f, ExponentSpec.scalar(2))
    with pytest.raises(RegimeError):
        check_pair("RadonRatio", f, f, ExponentSpec.pair(2))
    with pytest.raises(RegimeError):
        check_multi("HolderMulti", [f, f], ExponentSpec.multi([0.5, -1]))
    with pytest.raises(RegimeError):
        check_multi("ReverseHolderMulti", [f, f], ExponentSpec.multi([2, 2]))


def test_positivity_floor_names_index():
    P = uniform_partition(0, 1, 8, 1.0)
    g = GridFn(P, [1, 1, 1, 0, 1, 1, 1, 1])
    with pytest.raises(PositivityError) as exc:
        check_pair("ReverseHolder", const(P), g, ExponentSpec.pair(0.5))
    assert exc.value.index == 3
    with pytest.raises(PositivityError) as exc:
        check_multi("ReverseHolderMulti", [const(P), const(P), g], ExponentSpec.multi([0.5, -2, -2]))
    assert exc.value.index == 3 and exc.value.function == "f_3"
    # f_1 carries a positive exponent and may vanish
    check_multi("ReverseHolderMulti", [g, const(P), const(P)], ExponentSpec.multi([0.5, -2, -2]))


def test_degenerate_ratio():
    P = uniform_partition(0, 1, 8, 1.0)
    with pytest.raises(DegenerateError):
        check_pair("RadonRatio", const(P), const(P, 0.0), ExponentSpec.ratio(2, 0.5))


def test_arity_and_partition_errors():
    P = uniform_partition(0, 1, 8, 1.0)
    Q = uniform_partition(0, 1, 8, 0.5)
    with pytest.raises(LfcError):
        check_multi("PowerSum", [const(P)], ExponentSpec.scalar(2))
    with pytest.raises(LfcError):
        check("Holder", [const(P)] * 3, ExponentSpec.pair(2))
    with pytest.raises(LfcError):
        check_multi("HolderMulti", [const(P)] * 3, ExponentSpec.multi([2, 2]))
    with pytest.raises(PartitionMismatchError):
        check_pair("Holder", const(P), const(Q), ExponentSpec.pair(2))
    with pytest.raises(LfcError):
        check_pair("PowerSum", const(P), const(P), ExponentSpec.scalar(2))


# -- equality conditions -------------------------------------------------------------

def test_holder_proportional_pair_is_strict_unless_p_is_two():
    # f = lambda g is an equality case only when p = q = 2 (or g is constant)
    P = uniform_partition(0, 1, 64, 0.5)
    g = grid(P, lambda x: 1 + x)
    f = GridFn(P, 3 * g.values)
    assert check_pair("Holder", f, g, ExponentSpec.pair(2)).verdict is Verdict.EQUALITY
    assert check_pair("Holder", f, g, ExponentSpec.pair(3)).rel_slack > 1e-4
    assert check_pair("ReverseHolder", f, g, ExponentSpec.pair(0.5)).rel_slack > 1e-4


@pytest.mark.parametrize("p", [1.3, 2.0, 4.5, 7.9])
def test_holder_equality_when_powers_proportional(partition, p):
    q = p / (p - 1)
    rng = np.random.default_rng(int(p * 10))
    g = GridFn(partition, rng.uniform(0.1, 2, partition.size))
    f = GridFn(partition, 1.7 * g.values ** (q / p))
    assert check_pair("Holder", f, g, ExponentSpec.pair(p)).verdict is Verdict.EQUALITY


@pytest.mark.parametrize("p", [0.1, 0.5, 0.9])
def test_reverse_holder_equality_when_powers_proportional(partition, p):
    q = p / (p - 1)
    rng = np.random.default_rng(int(p * 10))
    g = GridFn(partition, rng.uniform(0.1, 2, partition.size))
    f = GridFn(partition, 0.6 * g.values ** (q / p))
    assert check_pair("ReverseHolder", f, g, ExponentSpec.pair(p)).verdict is Verdict.EQUALITY


def test_non_proportional_pairs_are_strict():
    P = random_partition(0, 1, 64, 2, 0.5)
    seen = 0
    for seed in range(200):
        f = gen_gridfn([seed, 1], P, "piecewise-random")
        g = gen_gridfn([seed, 2], P, "exp-of-random")
        if proportionality_check(f, g, 1e-6) is not None:
            continue
        for fam, exps in ((Family.MINKOWSKI, gen_exponents(seed, "A")),
                          (Family.REVERSE_MINKOWSKI, gen_exponents(seed, "B")),
                          (Family.RADON_RATIO, gen_exponents(seed, "R"))):
            rep = check_pair(fam, f, g, exps)
            if min(rep.lhs, rep.rhs) > 1e-6:
                assert rep.rel_slack > 0
                seen += 1
    assert seen > 500


def test_power_sum_strictness():
    P = uniform_partition(0, 1, 8, 1.0)
    a = GridFn(P, [1, 1, 0, 0, 0, 0, 0, 0])
    b = GridFn(P, [0, 0, 1, 1, 0, 0, 0, 0])
    c = GridFn(P, [0, 1, 1, 0, 0, 0, 0, 0])
    assert not power_sum_strict_expected([a, b])
    assert check_multi("PowerSum", [a, b], ExponentSpec.scalar(3)).verdict is Verdict.EQUALITY
    assert power_sum_strict_expected([a, c])
    assert check_multi("PowerSum", [a, c], ExponentSpec.scalar(3)).rel_slack > 0


def test_power_sum_grows_with_more_functions(partition):
    rng = np.random.default_rng(4)
    fs = [GridFn(partition, rng.uniform(0, 1, partition.size)) for _ in range(5)]
    lhs = [check_multi("PowerSum", fs[:m], ExponentSpec.scalar(2.5)).lhs for m in range(2, 6)]
    assert all(b > a for a, b in zip(lhs, lhs[1:]))


# -- scale invariance and the reverse/forward duality ----------------------------

@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31), st.floats(1e-3, 1e3),
       st.sampled_from([Family.HOLDER, Family.REVERSE_HOLDER, Family.MINKOWSKI,
                        Family.REVERSE_MINKOWSKI]))
def test_scale_invariance(seed, c, family):
    P = random_partition(0, 1, 30, seed, 0.5)
    regime = "A" if family in (Family.HOLDER, Family.MINKOWSKI) else "B"
    exps = gen_exponents(seed, regime)
    f = gen_gridfn([seed, 1], P, "piecewise-random")
    g = gen_gridfn([seed, 2], P, "exp-of-random")
    r1 = check_pair(family, f, g, exps)
    # Hoelder pairs are homogeneous in each argument, Minkowski pairs jointly
    cg = g if family in (Family.HOLDER, Family.REVERSE_HOLDER) else GridFn(P, c * g.values)
    r2 = check_pair(family, GridFn(P, c * f.values), cg, exps)
    assert abs(r1.rel_slack - r2.rel_slack) <= 1e-9


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**31))
def test_reverse_holder_via_forward_transform(seed):
    # Set c = 1/p, d = c/(c-1); forward Hoelder on F = (fg)^p, G = g^-p has
    # lhs = int f^p and rhs = (int fg)^p (int g^q)^(1-p).
    P = random_partition(0, 1, 30, seed, 0.7)
    exps = gen_exponents(seed, "B")
    p, q = exps.values
    f = gen_gridfn([seed, 1], P, "fractal-poly-nonneg")
    g = gen_gridfn([seed, 2], P, "exp-of-random")
    rev = check_pair("ReverseHolder", f, g, exps)
    c = 1 / p
    F = GridFn(P, (f.values * g.values) ** p)
    G = GridFn(P, g.values ** -p)
    fwd = check_pair("Holder", F, G, ExponentSpec.pair(c, c / (c - 1)))
    f_p = rev.rhs / (np.sum(P.weights * g.values ** q)) ** (1 / q)
    assert fwd.lhs == pytest.approx(f_p ** p, rel=1e-10)
    g_q = np.sum(P.weights * g.values ** q)
    assert fwd.rhs == pytest.approx(rev.lhs ** p * g_q ** (1 - p), rel=1e-10)


# -- proportionality ---------------------------------------------------------------

def test_proportionality_check():
    P = uniform_partition(0, 1, 16, 1.0)
    rng = np.random.default_rng(6)
    f = GridFn(P, rng.uniform(0.5, 2, 16))
    assert proportionality_check(GridFn(P, 3 * f.values), f, 1e-10) == pytest.approx(3)
    assert proportionality_check(grid(P, lambda x: x), const(P), 1e-10) is None
    noisy = GridFn(P, 2 * f.values + 1e-12 * rng.uniform(-1, 1, 16))
    dev = np.max(np.abs(noisy.values - 2 * f.values))
    assert 1e-14 * noisy.values.max() < dev <= 1e-10 * noisy.values.max()
    assert proportionality_check(noisy, f, 1e-10) == pytest.approx(2, rel=1e-11)
    assert proportionality_check(noisy, f, 1e-14) is None
    with pytest.raises(PartitionMismatchError):
        proportionality_check(f, const(uniform_partition(0, 1, 16, 0.5)), 1e-10)
    with pytest.raises(LfcError):
        proportionality_check(f, const(P, 0.0), 1e-10)


def test_report_json(schemas):
    P = cantor_partition(3, 2, 3, 0, 1)
    rep = check_pair("Holder", const(P), const(P), ExponentSpec.pair(2), seed=5)
    doc = rep.to_json()
    jsonschema.validate(doc, schemas["ineq_report"])
    assert doc["verdict"] == "EqualityWithinTol"
    assert doc["partition"]["descriptor"] == "cantor:3,2,3"
    assert set(doc) == {"family", "alpha", "exponents", "partition", "lhs", "rhs", "slack",
                        "rel_slack", "verdict", "seed"}
