import numpy as np
import pytest

from expr.evaluate import EvaluationError, evaluate
from expr.nodes import Var
from expr.parser import parse


def test_evaluate_examples():
    assert evaluate(parse("exp(0)"), {}) == 1
    assert abs(evaluate(parse("1/(1 - z1)"), {1: 0.5}) - 2) < 1e-15
    assert evaluate(parse("z1*z2"), {1: 2j, 2: 3}) == 6j


def test_assignment_keys():
    e = parse("z1 + 2*z2")
    assert evaluate(e, {Var(1): 1, 'z2': 2}) == 5
    assert isinstance(evaluate(e, {1: 1, 2: 2}), complex)


def test_missing_variable():
    with pytest.raises(EvaluationError):
        evaluate(parse("z1 + z2"), {1: 0})


def test_division_by_zero():
    with pytest.raises(EvaluationError):
        evaluate(parse("1/(1 - z1)"), {1: 1})
    with pytest.raises(EvaluationError):
        evaluate(parse("z1^-2"), {1: 0})


def test_poles_to_infinity():
    z = np.array([0, 0.5, 1])
    values = evaluate(parse("1/(1 - z1)"), {1: z}, poles='infinity')
    assert values.shape == (3,)
    assert values[0] == 1 and values[1] == 2
    assert not np.isfinite(values[2])
    with pytest.raises(ValueError):
        evaluate(parse("z1"), {1: 0}, poles='ignore')


def test_broadcasting():
    values = evaluate(parse("z1 * z2 + 1"), {1: np.arange(3)[:, None], 2: np.arange(4)[None, :]})
    assert values.shape == (3, 4)
    assert values[2, 3] == 7
    # Constants broadcast to the shape of the assignment.
    assert evaluate(parse("5"), {1: np.zeros(4)}).shape == (4,)
