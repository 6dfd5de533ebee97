from functools import lru_cache

import numpy as np
import pytest

from expr.nodes import Const
from expr.parser import parse
from geometry.planar import Disc, Rect
from geometry.product import ProductDomain, normalize
from lift.sections import top_derivative
from lift.verify import SegmentLeavesDomainError, T_by_quadrature, verify_T_identity


def test_T_by_quadrature_on_constants():
    assert T_by_quadrature(Const(1), [1], 2, [0.5]) == pytest.approx(0.125, abs=1e-14)
    assert T_by_quadrature(Const(1), [1, 2], 1, [0.5, 2j]) == pytest.approx(1j, abs=1e-14)


def test_T_contracts_on_small_domains():
    # |T g| <= sup|g| * prod |z_v|^n / n! along segments from 0.
    g = top_derivative(parse("exp(3*z1) * cos(z2)"), [1, 2], 2)
    point = [0.4 + 0.2j, -0.3j]
    bound = 9 * np.exp(3 * 0.45) * np.cosh(0.3) * np.prod(np.abs(point) ** 2) / 4
    assert abs(T_by_quadrature(g, [1, 2], 2, point)) <= bound


@pytest.mark.parametrize('n', [1, 2, 3])
def test_identity_holds(n):
    pd = ProductDomain.of(Disc(0, 0.5), Disc(0, 0.5))
    f = parse("exp(z1) * sin(z2) + z1 * z2^3 / (2 - z1)")
    points = pd.random_points(5, np.random.default_rng(3))
    assert verify_T_identity(f, pd, n, points) <= 1e-8


def test_identity_three_variables():
    pd = ProductDomain.of(Disc(0, 0.5), Disc(0, 0.5), Disc(0, 0.5))
    f = parse("exp(z1 * z2 + z3)")
    points = pd.random_points(3, np.random.default_rng(0))
    assert verify_T_identity(f, pd, 1, points) <= 1e-8
    assert verify_T_identity(f, pd, 0, points) == 0.0


def test_segments_must_stay_inside():
    pd = ProductDomain.of(Rect(1, 1, 2, 2))
    with pytest.raises(SegmentLeavesDomainError):
        verify_T_identity(parse("z1"), pd, 1, [[1.5 + 1.5j]])


@lru_cache(maxsize=None)
def normalized_bidisc():
    return normalize(ProductDomain.of(Disc(0, 1), Disc(0, 1), resolution=0.02))


@pytest.mark.parametrize('n', [1, 2])
@pytest.mark.parametrize('text', ["exp(z1 * z2)", "exp(z1 + z2)", "sin(z1) * z2"])
def test_identity_on_normalized_discs(text, n):
    pd = normalized_bidisc()
    points = pd.random_points(10, np.random.default_rng(n))
    assert verify_T_identity(parse(text), pd, n, points) <= 1e-10
