import numpy as np
import pytest

from expr.evaluate import evaluate
from expr.parser import parse
from geometry.hypotheses import HypothesisError
from geometry.planar import Annulus, Disc, Rect
from geometry.product import ProductDomain, normalize
from poly.cpoly import CPoly


def test_construction():
    pd = ProductDomain.of(Disc(0, 1), Rect(0, 0, 1, 1), start=2)
    assert pd.variables == (2, 3)
    assert len(pd) == 2
    assert pd.domain(3) == Rect(0, 0, 1, 1)
    assert pd.scales == (1.0, 1.0) and pd.shifts == (0j, 0j)
    assert pd.sub([3]).variables == (3,)
    with pytest.raises(KeyError):
        pd.domain(1)
    with pytest.raises(KeyError):
        pd.sub([1])
    with pytest.raises(ValueError):
        ProductDomain(((1, Disc(0, 1)), ('z1', Disc(0, 2))))
    with pytest.raises(TypeError):
        ProductDomain(((1, 'disc'),))


def test_contains_and_random_points():
    pd = ProductDomain.of(Disc(0, 1), Rect(0, 0, 1, 1))
    assert list(pd.contains([[0, 0.5 + 0.5j], [0, 2]])) == [True, False]
    points = pd.random_points(50, np.random.default_rng(1))
    assert points.shape == (50, 2)
    assert pd.contains(points).all()
    again = pd.random_points(50, np.random.default_rng(1))
    assert np.array_equal(points, again)


def test_normalize():
    pd = ProductDomain.of(Disc(0, 0.5), Rect(0, 0, 1, 1), resolution=0.02)
    npd = normalize(pd)
    assert npd.normalized
    assert normalize(npd) is npd
    assert npd.shifts == (0j, 0.5 + 0.5j)
    assert all(b <= 0.5 + 1e-9 for b in npd.path_bounds)
    assert npd.scales[0] == pytest.approx(0.5, rel=0.05)
    assert npd.contains([[0, 0]]).all()

    z = np.array([[0.1 + 0.2j, 0.3 + 0.9j]])
    assert np.allclose(npd.to_normalized([list(npd.shifts)]), 0)
    assert npd.contains(npd.to_normalized(z)).all()


def test_normalize_rejects_annulus():
    pd = ProductDomain.of(Disc(0, 1), Annulus(0, 0.3, 1), resolution=0.02)
    with pytest.raises(HypothesisError) as info:
        normalize(pd)
    assert info.value.report.complement_components == 2
    assert 'z2' in str(info.value)


def test_expression_and_polynomial_coordinate_changes():
    pd = ProductDomain(((1, Disc(1, 1)), (2, Disc(0, 1))), scales=(0.5, 2.0), shifts=(1, 1j))
    e = parse("z1 * exp(z2)")
    w = {1: 0.3 - 0.1j, 2: 0.2j}
    original = {1: w[1] / 0.5 + 1, 2: w[2] / 2.0 + 1j}
    assert evaluate(pd.normalize_expr(e), w) == pytest.approx(evaluate(e, original))

    p = CPoly.var(1) * CPoly.var(2)
    q = pd.denormalize(p)
    z = {1: 0.7, 2: 0.4j}
    assert q(z) == pytest.approx(p({1: 0.5 * (0.7 - 1), 2: 2.0 * (0.4j - 1j)}))
