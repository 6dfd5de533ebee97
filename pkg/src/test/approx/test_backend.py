import math

import numpy as np
import pytest

from approx.backend import (
    FitResult, RankDeficiencyError, ToleranceUnreachable, approx_to_tolerance, arnoldi_basis,
    degree_schedule, lsq_approx, measure_error, monomial_matrix, taylor_approx,
)
from approx.grids import GridSpec
from chordal.sphere import chi
from expr.evaluate import EvaluationError
from expr.parser import parse
from geometry.planar import Disc, Rect
from geometry.product import ProductDomain
from poly.cpoly import CPoly, DegreeCapError
import utils.settings


def test_taylor_coefficients_of_exp():
    p = taylor_approx(parse("exp(z1)"), [1], [4])
    assert p.degrees([1]) == (4,)
    for k in range(5):
        assert p.coefficient({1: k}) == pytest.approx(1 / math.factorial(k), abs=1e-12)


def test_taylor_two_variables_and_radii():
    p = taylor_approx(parse("1 / ((2 - z1) * (3 - z2))"), [1, 2], [3, 2], radii=[1.0, 0.5])
    for j in range(4):
        for k in range(3):
            expected = 2.0 ** -(j + 1) * 3.0 ** -(k + 1)
            assert p.coefficient({1: j, 2: k}) == pytest.approx(expected, abs=1e-12)
    assert taylor_approx(parse("2 + 1i"), [], []) == CPoly.const(2 + 1j)


def test_taylor_errors(monkeypatch):
    with pytest.raises(EvaluationError):
        taylor_approx(parse("1 / (1 - z1)"), [1], [3])
    monkeypatch.setenv(utils.settings.MAX_DEGREE_ENV, '10')
    with pytest.raises(DegreeCapError):
        taylor_approx(parse("z1"), [1], [11])


def test_exp_on_unit_disc():
    pd = ProductDomain.of(Disc(0, 1))
    p = taylor_approx(parse("exp(z1)"), [1], [8])
    assert measure_error(parse("exp(z1)"), p, pd, (8,), GridSpec.for_dimension(1)) <= 5e-6


def test_arnoldi_basis():
    nodes = np.exp(2j * np.pi * np.arange(64) / 64) * 0.5 + 1
    Q, H = arnoldi_basis(nodes, 10)
    assert np.allclose(Q.conj().T @ Q, 64 * np.eye(11), atol=1e-9)
    M = monomial_matrix(H)
    vandermonde = nodes[:, np.newaxis] ** np.arange(11)
    assert np.allclose(vandermonde @ M, Q, atol=1e-6)
    with pytest.raises(RankDeficiencyError):
        arnoldi_basis(nodes[:5], 10)
    with pytest.raises(RankDeficiencyError):
        arnoldi_basis(np.ones(20), 3)


def test_lsq_exp_on_bidisc():
    pd = ProductDomain.of(Disc(0, 0.5), Disc(0, 0.5))
    result = lsq_approx(parse("exp(z1 + z2)"), pd, (6, 6))
    assert isinstance(result, FitResult)
    assert result.method == 'lsq'
    assert result.degrees == (6, 6)
    assert result.error <= 1e-5
    assert result.to_dict()['terms'] == len(result.poly)


def test_lsq_on_rectangle_off_center():
    pd = ProductDomain.of(Rect(1, 1, 2, 2))
    result = lsq_approx(parse("1 / z1"), pd, (12,))
    assert result.error <= 1e-4
    with pytest.raises(ValueError):
        lsq_approx(parse("1 / z1"), pd, (3, 3))


def test_degree_schedule():
    assert list(degree_schedule(10)) == [1, 2, 4, 8, 10]
    assert list(degree_schedule(8)) == [1, 2, 4, 8]
    assert list(degree_schedule(1)) == [1]


def test_polynomial_targets_are_exact():
    pd = ProductDomain.of(Disc(0, 1), Rect(0, 0, 1, 1))
    e = parse("z1^2 * z2 - 3*z2 + 1i")
    result = approx_to_tolerance(e, pd, 1e-12)
    assert result.poly == CPoly.from_expr(e)
    assert result.degrees == (2, 1)
    assert result.error <= 1e-12


def test_geometric_series_degree():
    pd = ProductDomain.of(Disc(0, 0.9))
    result = approx_to_tolerance(parse("1 / (1 - z1)"), pd, 1e-3)
    assert result.error < 1e-3
    assert max(result.degrees) <= 110


def test_chordal_metric_fit():
    pd = ProductDomain.of(Disc(0, 0.5))
    result = approx_to_tolerance(parse("exp(z1)"), pd, 1e-6, metric='chordal')
    assert result.metric == 'chordal'
    assert result.error < 1e-6
    with pytest.raises(ValueError):
        measure_error(parse("z1"), CPoly.var(1), pd, (1,), GridSpec(8), metric='hyperbolic')


def test_unreachable_tolerance():
    pd = ProductDomain.of(Disc(0, 1))
    with pytest.raises(ToleranceUnreachable) as info:
        approx_to_tolerance(parse("exp(5*z1)"), pd, 1e-12, max_degree=4)
    best = info.value.best
    assert best is not None
    assert max(best.degrees) <= 4
    assert best.error > 1e-12


def test_free_variables_must_be_factors():
    with pytest.raises(ValueError):
        approx_to_tolerance(parse("z1 + z2"), ProductDomain.of(Disc(0, 1)), 1e-3)


def test_constants_on_empty_product():
    pd = ProductDomain.of(Disc(0, 0.5)).sub([])
    grid = GridSpec.for_dimension(0)
    e = parse("2 + 1i")
    result = approx_to_tolerance(e, pd, 1e-12)
    assert result.poly == CPoly.const(2 + 1j)
    assert result.degrees == ()
    assert result.error == 0.0
    assert measure_error(e, CPoly.const(2), pd, (), grid) == pytest.approx(1.0)
    assert measure_error(e, CPoly.const(2), pd, (), grid, metric='chordal') == pytest.approx(chi(2, 2 + 1j))
    assert measure_error(parse("1 / 0"), CPoly.const(2), pd, (), grid) == math.inf
