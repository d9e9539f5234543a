"""Local fractional calculus at finite resolution.

Gamma evaluation, fractal-measure partitions, the local fractional integral
and derivative, and a certifier for Hoelder/Minkowski/Radon-type
inequalities over randomized instances.
"""
from .calculus import (
    FractalPoly,
    GridFn,
    fp_derivative,
    fp_eval,
    fp_integral,
    lf_derivative_est,
    lf_integral,
)
from .errors import LfcError
from .expr import evaluate, parse, to_source
from .gamma import gamma
from .harness import (
    SuiteConfig,
    SuiteReport,
    gen_exponents,
    gen_gridfn,
    oracle_check,
    replay_case,
    run_suite,
)
from .inequalities import (
    ExponentSpec,
    Family,
    IneqReport,
    Verdict,
    check,
    check_multi,
    check_pair,
    proportionality_check,
)
from .partition import (
    Alpha,
    Partition,
    cantor_partition,
    make_partition,
    random_partition,
    uniform_partition,
)

__version__ = "0.1.0"
