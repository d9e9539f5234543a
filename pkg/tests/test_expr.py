import math
import random

import numpy as np
import pytest

from grammar_oracle import is_valid
from lfcalc.expr import (
    BinOp,
    Call,
    ExprEvalError,
    Neg,
    Num,
    ParseError,
    Var,
    compile_expr,
    evaluate,
    parse,
    to_source,
)

CORPUS = [
    "x", "a", "1", "0.5", ".25", "1e-3", "2.5E+2", "x^(2*a)", "1+2*3", "-x^2",
    "2^3^2", "2^-1", "--x", "x - -1", "(x+1)*(x-1)", "x/2/3", "1 - x - x",
    "exp(x)", "sin(3.1*x) + 1", "abs(x-1)", "exp(-x^2/2)", "x^a + x^(2*a)",
    "abs(sin(x))^0.5", "-(x)", "((((x))))", "3*x^2 - 2*x + 1", "x^(1-a)",
    "exp(abs(x - 0.5)) / (1 + x)", "-2^-x^2", "1/(x + 1e-12)",
]


def test_corpus_size():
    assert len(CORPUS) == 30


@pytest.mark.parametrize("src", CORPUS)
def test_round_trip(src):
    tree = parse(src)
    assert parse(to_source(tree)) == tree
    assert is_valid(src)


def test_examples():
    assert evaluate(parse("x^(2*a)"), 4.0, 0.5) == 4.0
    assert evaluate(parse("1+2*3"), 0.0, 0.5) == 7.0
    assert evaluate(parse("abs(x-1)"), 0.25, 0.5) == 0.75
    assert evaluate(parse("exp(0)"), 123.0, 0.3) == 1.0


def test_precedence_and_associativity():
    assert parse("-x^2") == Neg(BinOp("^", Var("x"), Num(2.0)))
    assert parse("2^3^2") == BinOp("^", Num(2.0), BinOp("^", Num(3.0), Num(2.0)))
    assert parse("1-2-3") == BinOp("-", BinOp("-", Num(1.0), Num(2.0)), Num(3.0))
    assert parse("-x*2") == BinOp("*", Neg(Var("x")), Num(2.0))
    assert parse(" exp ( x ) ") == Call("exp", Var("x"))
    assert evaluate(parse("2^3^2"), 0, 1) == 512
    assert evaluate(parse("-2^2"), 0, 1) == -4
    assert evaluate(parse("2^-1"), 0, 1) == 0.5


def test_syntax_error_offset():
    with pytest.raises(ParseError) as exc:
        parse("x^^2")
    assert exc.value.offset == 2
    assert "operand" in exc.value.expected


@pytest.mark.parametrize("src,offset", [
    ("", 0), ("1+", 2), ("(x", 2), ("x)", 1), ("foo(x)", 0), ("exp x", 4),
    ("2x", 1), ("x $ 1", 2), ("1e400", 0), ("abs(x,1)", 5),
])
def test_error_positions(src, offset):
    with pytest.raises(ParseError) as exc:
        parse(src)
    assert exc.value.offset == offset


def test_eval_errors():
    with pytest.raises(ExprEvalError) as exc:
        evaluate(parse("(-2)^0.5"), 0, 0.5)
    assert "(-2.0)" in exc.value.subexpr
    with pytest.raises(ExprEvalError):
        evaluate(parse("1/(x-1)"), 1.0, 0.5)
    with pytest.raises(ExprEvalError):
        evaluate(parse("exp(x)"), 1000.0, 0.5)
    with pytest.raises(ExprEvalError):
        evaluate(parse("x^-1"), 0.0, 0.5)
    assert evaluate(parse("(-2)^2"), 0, 0.5) == 4.0


def test_vectorized():
    f = compile_expr("x^a", 0.5)
    np.testing.assert_allclose(f(np.array([0.0, 1.0, 4.0])), [0, 1, 2])
    g = compile_expr("3", 0.5)
    assert np.asarray(g(np.array([1.0, 2.0]))).tolist() == [3.0, 3.0]


TOKENS = ["x", "a", "exp", "sin", "abs", "(", ")", "+", "-", "*", "/", "^", "1", "2.5",
          ".5", "1e3", "3.", " ", "e", "E2", "0.5", "\t", "xx", "$", ",", "**"]


def _random_inputs(n, seed):
    rng = random.Random(seed)
    for i in range(n):
        if i % 2:
            yield "".join(rng.choice(TOKENS) for _ in range(rng.randint(0, 9)))
        else:
            raw = bytes(rng.randrange(256) for _ in range(rng.randint(0, 12)))
            yield raw.decode("latin-1")


def test_fuzz_never_crashes_and_agrees_with_reference():
    valid_seen = invalid_seen = 0
    for src in _random_inputs(10_000, 2024):
        try:
            tree = parse(src)
        except ParseError as exc:
            assert 0 <= exc.offset <= len(src)
            verdict = is_valid(src)
            assert verdict is not True, src
            invalid_seen += 1
            continue
        verdict = is_valid(src)
        assert verdict is not False, src
        assert parse(to_source(tree)) == tree
        valid_seen += 1
        try:
            value = evaluate(tree, 0.7, 0.5)
        except ExprEvalError:
            continue
        assert math.isfinite(value)
    assert valid_seen > 150 and invalid_seen > 5000


def test_non_string_rejected():
    with pytest.raises(TypeError):
        parse(b"x")
