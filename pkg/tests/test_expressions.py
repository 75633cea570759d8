"""Expression parser: grammar, evaluation, round-trip and robustness."""

import numpy as np
import pytest

import spinsurf as ss
from spinsurf.expressions import BinOp, Call, Neg, Number, Pi, Variable, to_string


def ev(text, x=0.0, y=0.0):
    return ss.parse_expression(text).evaluate(x, y)


def test_basic_examples():
    assert ev("2*x", 1.0, 5.0) == 2.0
    assert abs(ev("cos(x/2)", np.pi, 0.0)) <= 1e-15
    assert ev("1+2*3") == 7.0
    assert ev("-x", 2.0) == -2.0
    assert abs(ev("2*pi") - 2 * np.pi) <= 1e-15


def test_precedence_and_associativity():
    assert ev("2-3-4") == -5.0  # left associative
    assert ev("8/4/2") == 1.0
    assert ev("2+3*4-5") == 9.0
    assert ev("(2+3)*4") == 20.0
    assert ev("-2*3") == -6.0
    assert ev("2*-3") == -6.0  # unary minus binds tighter than *
    assert ev("1 - -1") == 2.0


def test_function_requires_parentheses():
    with pytest.raises(ss.ParseError) as exc:
        ss.parse_expression("2*x + sin y")
    assert exc.value.position == 9


def test_number_formats():
    assert ev("1.5e2") == 150.0
    assert ev(".5") == 0.5
    assert ev("2.") == 2.0
    assert ev("1e-3") == 0.001


def test_error_positions():
    cases = {"": 0, "(1+2": 4, "1+": 2, "foo": 0, "1 + * 2": 4}
    for text, pos in cases.items():
        with pytest.raises(ss.ParseError) as exc:
            ss.parse_expression(text)
        assert exc.value.position == pos, text


def test_trailing_garbage():
    with pytest.raises(ss.ParseError):
        ss.parse_expression("1+2 )")


def test_array_evaluation():
    grid = ss.Grid.rectangle(8)
    x, y = grid.mesh()
    vals = ev("x*y + sin(x)", x, y)
    assert np.max(np.abs(vals - (x * y + np.sin(x)))) <= 1e-15


def random_tree(rng, depth=0):
    choice = rng.integers(0, 6 if depth < 5 else 3)
    if choice == 0:
        return Number(float(np.round(rng.uniform(0, 10), 3)))
    if choice == 1:
        return Variable("x" if rng.integers(2) else "y")
    if choice == 2:
        return Pi()
    if choice == 3:
        return Neg(random_tree(rng, depth + 1))
    if choice == 4:
        return Call(["sin", "cos", "exp"][rng.integers(3)], random_tree(rng, depth + 1))
    op = "+-*/"[rng.integers(4)]
    return BinOp(op, random_tree(rng, depth + 1), random_tree(rng, depth + 1))


def test_round_trip_random_trees(rng):
    for _ in range(300):
        tree = random_tree(rng)
        text = to_string(tree)
        assert ss.parse_expression(text) == tree, text


def test_deep_nesting_reports_error_not_crash():
    with pytest.raises(ss.ParseError):
        ss.parse_expression("(" * 2000 + "1" + ")" * 2000)
    with pytest.raises(ss.ParseError):
        ss.parse_expression("-" * 5000 + "1")


def test_fuzz_small(rng):
    alphabet = "xy01234567890.+-*/()pi sincoexp\t\nq$\\"
    for _ in range(2000):
        n = int(rng.integers(0, 30))
        text = "".join(alphabet[i] for i in rng.integers(0, len(alphabet), size=n))
        try:
            ss.parse_expression(text)
        except ss.ParseError:
            pass
