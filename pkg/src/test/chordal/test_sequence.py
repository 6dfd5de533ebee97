import math

import numpy as np
import pytest

from approx.backend import approx_to_tolerance
from chordal.conformal import conformal
from chordal.sequence import (
    ChordalSeq, ChordalTargetError, chordal_approx, classify_limit, closure_axes, dilation_radius,
    infinity_sequence,
)
from chordal.sphere import chi
from expr.calculus import substitute
from expr.evaluate import evaluate
from expr.nodes import Const, Var, mul
from expr.parser import parse
from geometry.planar import Disc, MobiusDisc
from geometry.product import ProductDomain
from poly.cpoly import CPoly
import utils.settings


def test_dilation_radius():
    assert [dilation_radius(n) for n in (1, 2, 3)] == [0.5, 0.75, 0.875]


def test_closure_axes_include_boundary():
    pair = conformal(Disc(1, 2))
    (axis,) = closure_axes([pair], count=16)
    assert len(axis) == 16 * 8 + 1
    assert axis[0] == 1
    assert np.allclose(np.abs(axis[1:17] - 1), 2)
    axes = closure_axes([pair] * 3)
    assert np.prod([len(a) for a in axes]) <= utils.settings.MAX_VALIDATION_POINTS


def test_geometric_series_converges_chordally():
    pd = ProductDomain.of(Disc(0, 1))
    schedule = [0.1, 0.05, 0.03, 0.02, 0.015]
    seq = chordal_approx(parse("1 / (1 - z1)"), pd, schedule, strict=True)
    assert seq.met
    assert len(seq) == 5
    assert seq.radii == tuple(1 - 2.0 ** -n for n in range(1, 6))
    assert all(a > b for a, b in zip(seq.errors, seq.errors[1:]))
    assert seq.errors[-1] < 0.05
    # The target is infinite at z1 = 1, which lies on the sampled boundary.
    assert all(math.isinf(u) for u in seq.uniform_errors)
    rows = list(seq.rows())
    assert [row['n'] for row in rows] == [1, 2, 3, 4, 5]
    assert rows[-1]['degree'] == max(seq.polys[-1].degrees([1]))
    assert rows[0]['target'] == 0.1
    assert all(row['fit_error'] <= row['target'] for row in rows)


def test_identity_map_matches_backend():
    pd = ProductDomain.of(Disc(0, 1))
    f = parse("exp(z1) / (3 - z1)")
    schedule = [1e-2, 1e-4]
    seq = chordal_approx(f, pd, schedule)
    for n, (p, eps) in enumerate(zip(seq.polys, schedule), 1):
        pullback = substitute(f, {1: mul(Const(dilation_radius(n)), Var(1))})
        expected = approx_to_tolerance(pullback, pd, eps, metric='chordal').poly
        assert (p - expected).max_abs_coefficient() <= 1e-10


def test_pullback_matches_composition():
    pd = ProductDomain.of(MobiusDisc(1, 0, 0.5, 2))
    (pair,) = [conformal(d) for d in pd.domains]
    f = parse("exp(z1) / (3 - z1)")
    r = dilation_radius(3)
    pullback = substitute(f, {1: pair.inverse_expr(mul(Const(r), Var(1)))})
    for w in (0, 0.5j, -0.9 + 0.1j):
        z = pair.inverse(r * w)
        assert evaluate(pullback, {1: w}) == pytest.approx(evaluate(f, {1: z}))


def test_holomorphic_target_on_mobius_disc():
    pd = ProductDomain.of(MobiusDisc(1, 0, 0.5, 2))
    seq = chordal_approx(parse("exp(z1)"), pd, [1e-2, 1e-3], strict=True)
    assert seq.met
    assert all(np.isfinite(seq.uniform_errors))


def test_two_variable_affine_product():
    pd = ProductDomain.of(Disc(1j, 0.5), Disc(0, 1))
    seq = chordal_approx(parse("z2 / (2 - z1 * z2)"), pd, [0.1, 0.01])
    assert seq.met
    assert seq.variables == (1, 2)


def test_strict_mode_raises(monkeypatch):
    monkeypatch.setenv(utils.settings.MAX_DEGREE_ENV, '4')
    pd = ProductDomain.of(Disc(0, 1))
    with pytest.raises(ChordalTargetError) as info:
        chordal_approx(parse("1 / (1 - z1)"), pd, [1e-9, 1e-9, 1e-9, 1e-9], strict=True)
    assert len(info.value.sequence) == 4
    assert not info.value.sequence.met
    seq = chordal_approx(parse("1 / (1 - z1)"), pd, [1e-9])
    assert not seq.met


def test_infinity_sequence():
    pd = ProductDomain.of(Disc(0, 1))
    seq = chordal_approx('inf', pd, [0.5, 0.2, 0.1])
    assert seq.polys == (CPoly.const(1), CPoly.const(2), CPoly.const(3))
    assert seq.errors == pytest.approx([1 / math.sqrt(1 + n * n) for n in (1, 2, 3)])
    assert seq.met


def test_classify_infinity():
    pd = ProductDomain.of(Disc(0, 1))
    seq = infinity_sequence(pd, 1200)
    assert classify_limit(seq.polys, pd) == 'infinity'
    assert classify_limit(seq.polys[:20], pd, threshold=10) == 'infinity'


def test_classify_finite_and_undetermined():
    pd = ProductDomain.of(Disc(0, 1), Disc(0, 0.5))
    z1, z2 = CPoly.var(1), CPoly.var(2)
    converging = [z1 * z2 + 1 + CPoly.const(1e-6 / n) for n in range(1, 11)]
    assert classify_limit(converging, pd) == 'finite'
    oscillating = [CPoly.const(5 * (n % 2)) for n in range(1, 11)]
    assert classify_limit(oscillating, pd) == 'undetermined'
    with pytest.raises(ValueError):
        classify_limit([z1], pd)


def test_seq_without_targets():
    seq = ChordalSeq((1,), (CPoly.var(1),), (0.1,))
    assert seq.met
    row = next(seq.rows())
    assert row['radius'] is None and row['target'] is None and row['uniform_error'] is None
    assert chi(1, 1) == 0
