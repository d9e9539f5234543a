import math
import random

import mpmath
import pytest

from lfcalc.errors import DomainError
from lfcalc.gamma import gamma

# 50-digit mpmath values, evaluated once at the exact binary argument
FROZEN = [
    (math.log(2) / math.log(3) + 1, 0.8973709406726663523673407000721491348971815323748),
    (1e-8, 99999999.422784342896770918912459820689532426042118),
    (0.1, 9.5135076986687312858079798958252325009137161063903),
    (2.5, 1.3293403881791370204736256125058588870981620920918),
    (33.3, 748757759652263232744435445908246334.970775040514),
    (100.7, 2.3417900214543305555410935455444480895974771809669e+157),
    (169.9, 2.5552232692967770932431078874297971447513650030958e+304),
    (170.0, 4.2690680090047052749392518888995665380688186360567e+304),
]


def test_identities():
    assert gamma(1) == 1.0
    assert gamma(5) == 24.0
    assert gamma(0.5) == pytest.approx(1.7724538509055160, rel=1e-13)


@pytest.mark.parametrize("x,expected", FROZEN)
def test_frozen_reference_values(x, expected):
    assert gamma(x) == pytest.approx(expected, rel=1e-13)


def test_against_mpmath_on_random_arguments():
    rng = random.Random(11)
    with mpmath.workdps(50):
        for _ in range(2000):
            x = rng.choice([rng.uniform(1e-6, 1), rng.uniform(1, 10), rng.uniform(10, 170)])
            ref = mpmath.gamma(mpmath.mpf(x))
            assert abs((gamma(x) - ref) / ref) <= 1e-13, x


def test_recurrence():
    rng = random.Random(5)
    for _ in range(1000):
        x = rng.uniform(0.5, 80)
        g1 = gamma(x + 1)
        assert abs(g1 - x * gamma(x)) / g1 <= 1e-13


@pytest.mark.parametrize("k", range(11))
def test_half_integers(k):
    closed = math.factorial(2 * k) * math.sqrt(math.pi) / (4 ** k * math.factorial(k))
    assert gamma(k + 0.5) == pytest.approx(closed, rel=1e-12)


def test_monotone_above_two():
    xs = [2 + i * 0.37 for i in range(455)]
    vals = [gamma(x) for x in xs]
    assert all(b > a for a, b in zip(vals, vals[1:]))


@pytest.mark.parametrize("x", [0, -1, -0.5, 170.0001, 1e6, float("nan"), float("inf")])
def test_domain(x):
    with pytest.raises(DomainError):
        gamma(x)
