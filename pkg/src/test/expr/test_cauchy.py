import cmath

from hypothesis import given, settings
import hypothesis.strategies as st
import pytest

from .custom_strategies import point_strategy
from expr.calculus import differentiate
from expr.cauchy import numeric_derivative, quadrature_count
from expr.evaluate import evaluate
from expr.orders import MultiOrder
from expr.parser import parse


def test_numeric_derivative_examples():
    assert abs(numeric_derivative(parse("exp(z1)"), {1: 1}, 0, 0.5) - 1) < 1e-10
    assert abs(numeric_derivative(parse("z1^3"), {1: 3}, 0, 0.5) - 6) < 1e-10
    assert abs(numeric_derivative(parse("sin(z1)"), {1: 1}, 0.5, 0.5) - cmath.cos(0.5)) < 1e-8


def test_numeric_derivative_radius():
    with pytest.raises(ValueError):
        numeric_derivative(parse("z1"), {1: 1}, 0, 0)
    with pytest.raises(ValueError):
        numeric_derivative(parse("z1"), {1: 1}, 0, -1)


def test_quadrature_count():
    assert quadrature_count(1) == 256
    assert quadrature_count(3) ** 3 <= 2 ** 20


CATALOG = [
    "z1^3 * z2 + 2*z2^2",
    "exp(z1 + 2*z2)",
    "sin(z1) * cos(z2)",
    "exp(z1 * z2) * (1 + z1)",
]


@settings(deadline=None, max_examples=50)
@given(
    text=st.sampled_from(CATALOG),
    a=st.integers(0, 3),
    b=st.integers(0, 3),
    point=point_strategy([1, 2], radius=0.5),
)
def test_symbolic_matches_cauchy(text, a, b, point):
    e = parse(text)
    order = MultiOrder({1: a, 2: b})
    exact = evaluate(differentiate(e, order), point)
    numeric = numeric_derivative(e, order, point, 0.5)
    assert abs(exact - numeric) <= 1e-8 * max(1.0, abs(exact))
