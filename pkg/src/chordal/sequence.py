"""Polynomial sequences converging chordally, and classification of limits.

A function on a product of Jordan domains that is finite and holomorphic
inside but may take the value infinity on the boundary is pulled back to the
closed polydisc by the conformal maps, dilated by `r_n = 1 - 2^-n` so that it
is pole-free, fitted there, and pushed forward again.
"""

from dataclasses import dataclass
import logging

import numpy as np

from approx.backend import ToleranceUnreachable, approx_to_tolerance
from approx.grids import open_mesh
from chordal.conformal import conformal
from chordal.sphere import chi
from expr.calculus import substitute
from expr.evaluate import evaluate
from expr.nodes import Const, Var, mul
from geometry.planar import Disc
from geometry.product import ProductDomain
from poly.cpoly import CPoly
import utils.arrays
import utils.settings


logger = logging.getLogger(__name__)

RING_RADII = (1.0, 0.999, 0.99, 0.95, 0.9, 0.75, 0.5, 0.25)
RING_POINTS = 256


class ChordalTargetError(RuntimeError):
    """Raised when a fit misses its tolerance; carries the partial
    ChordalSeq as `.sequence`."""

    def __init__(self, message, sequence):
        super().__init__(message)
        self.sequence = sequence


@dataclass(frozen=True)
class ChordalSeq:
    """Polynomials `P_n` with their empirical sup errors against the target.

    Fields:
    - variables -- tuple of variable ids
    - polys -- tuple of CPoly
    - errors -- chordal sup errors against the target on the closure grid
    - uniform_errors -- Euclidean sup errors on the same grid (inf where the
      target is infinite)
    - radii -- dilation radius used for each entry (None when not dilated)
    - targets -- fit tolerance requested for each entry
    - fit_errors -- validation errors of the fits behind each entry (the
      polydisc fit, plus the push-forward fit for non-affine maps)
    """

    variables: tuple
    polys: tuple
    errors: tuple
    uniform_errors: tuple = ()
    radii: tuple = ()
    targets: tuple = ()
    fit_errors: tuple = ()

    def __len__(self):
        return len(self.polys)

    @property
    def met(self):
        measured = self.fit_errors or self.errors
        return all(e <= t for e, t in zip(measured, self.targets))

    def rows(self):
        """Error-schedule table rows: index, radius, target, fit error,
        chordal error, uniform error, degree."""
        for k, p in enumerate(self.polys):
            yield {
                'n': k + 1,
                'radius': self.radii[k] if self.radii else None,
                'target': self.targets[k] if self.targets else None,
                'fit_error': self.fit_errors[k] if self.fit_errors else None,
                'chordal_error': self.errors[k],
                'uniform_error': self.uniform_errors[k] if self.uniform_errors else None,
                'degree': max(p.degrees(self.variables), default=0),
            }


def closure_axes(pairs, count=RING_POINTS, max_points=utils.settings.MAX_VALIDATION_POINTS):
    """Per-factor sample points of the closure: concentric rings of the disc,
    including the boundary circle, plus the center, mapped back by each
    conformal inverse."""
    while count > 8 and ((count * len(RING_RADII) + 1) ** len(pairs)) > max_points:
        count //= 2
    theta = 2 * np.pi * np.arange(count) / count
    rings = np.concatenate([[0j]] + [r * np.exp(1j * theta) for r in RING_RADII])
    return [pair.inverse(rings) for pair in pairs]


def _errors(f, p, variables, axes):
    mesh = open_mesh(variables, axes)
    shape = tuple(len(a) for a in axes)
    target = np.broadcast_to(evaluate(f, mesh, poles='infinity'), shape)
    values = np.broadcast_to(p.eval(mesh), shape)
    chordal = float(np.max(chi(values, target)))
    with np.errstate(invalid='ignore'):
        uniform = np.where(np.isfinite(target), np.abs(values - target), np.inf)
    return chordal, float(np.max(uniform))


def _fit(e, pd, eps, metric, label):
    try:
        return approx_to_tolerance(e, pd, eps, metric=metric)
    except ToleranceUnreachable as exc:
        if exc.best is None:
            raise
        logger.warning("%s fit missed %g: %s", label, eps, exc)
        return exc.best


def _push_forward(q, pairs, pd, eps):
    """Compose a polydisc polynomial with the conformal maps. Affine maps
    compose exactly; otherwise one more uniform fit within `eps` is needed.
    Returns the polynomial and the error of that fit (0 when exact)."""
    if all(pair.is_affine for pair in pairs):
        for var, pair in zip(pd.variables, pairs):
            a, b = pair.affine_form()
            q = q.affine_substitute(var, a, b)
        return q, 0.0
    composed = substitute(q.to_expr(), {v: pair.forward_expr(v) for v, pair in zip(pd.variables, pairs)})
    result = _fit(composed, pd, eps, 'uniform', "push-forward")
    return result.poly, result.error


def dilation_radius(n):
    return 1 - 2.0 ** -n


def chordal_approx(f, pd, schedule, *, strict=False):
    """Build a ChordalSeq with one polynomial per tolerance in `schedule`.

    For the n-th entry (n from 1) the pullback `f(phi^-1(r_n w))`, with
    `r_n = 1 - 2^-n`, is fitted on the closed unit polydisc in the chordal
    metric and composed with the conformal maps. Affine maps compose exactly
    and the fit receives the whole tolerance; otherwise it is split evenly
    between the polydisc fit and the push-forward fit. The recorded errors
    measure the result against `f` itself, so they also carry the dilation
    error, which shrinks as `r_n` grows.

    Optional keyword arguments:
    - strict (default False) -- raise ChordalTargetError when a fit misses
      its tolerance; otherwise log a warning

    Raises ValueError if a factor has no conformal map.
    """
    if isinstance(f, str) and f.strip() == 'inf':
        return infinity_sequence(pd, len(schedule))
    pairs = [conformal(domain) for domain in pd.domains]
    polydisc = ProductDomain(tuple((v, Disc(0, 1)) for v in pd.variables), resolution=pd.resolution)
    affine = all(pair.is_affine for pair in pairs)
    axes = closure_axes(pairs)
    polys, errors, uniform, radii, fit_errors = [], [], [], [], []
    for n, target in enumerate(schedule, 1):
        r = dilation_radius(n)
        pullback = substitute(f, {v: pair.inverse_expr(mul(Const(r), Var(v))) for v, pair in zip(pd.variables, pairs)})
        share = target if affine else target / 2
        fitted = _fit(pullback, polydisc, share, 'chordal', f"polydisc {n}")
        p, push_error = _push_forward(fitted.poly, pairs, pd, share)
        chordal_error, uniform_error = _errors(f, p, pd.variables, axes)
        logger.debug("chordal step %d: r=%g, chi error %g, uniform error %g", n, r, chordal_error, uniform_error)
        polys.append(p)
        errors.append(chordal_error)
        uniform.append(uniform_error)
        radii.append(r)
        fit_errors.append(fitted.error + push_error)
    seq = ChordalSeq(pd.variables, tuple(polys), tuple(errors), tuple(uniform), tuple(radii),
                     tuple(schedule), tuple(fit_errors))
    if not seq.met:
        message = f"fit errors {list(seq.fit_errors)} exceed tolerances {list(schedule)}"
        if strict:
            raise ChordalTargetError(message, seq)
        logger.warning(message)
    if any(a < b for a, b in zip(errors, errors[1:])):
        logger.warning("chordal errors are not non-increasing: %s", errors)
    return seq


def infinity_sequence(pd, count):
    """The constant polynomials `P_n = n`, n = 1..count, which converge
    chordally to the constant infinity with error `1 / sqrt(1 + n^2)`."""
    polys = tuple(CPoly.const(n) for n in range(1, count + 1))
    errors = tuple(float(chi(n, np.inf)) for n in range(1, count + 1))
    return ChordalSeq(pd.variables, polys, errors, (np.inf,) * count, targets=errors)


def _interior_points(pd, count=64):
    axes = [domain.interior_samples(count) for domain in pd.domains]
    while np.prod([len(a) for a in axes]) > utils.settings.MAX_VALIDATION_POINTS:
        k = int(np.argmax([len(a) for a in axes]))
        axes[k] = utils.arrays.thin_evenly(axes[k], len(axes[k]) // 2)
    return axes


def classify_limit(polys, pd, *, threshold=None, tolerance=None):
    """Decide what a polynomial sequence converges to on the interior of pd.

    Returns 'infinity' if the minimum of |P_n| over the interior grid is
    non-decreasing along the second half of the sequence and ends above
    `threshold`; 'finite' if the second half is chordally Cauchy within
    `tolerance` with finite values below `threshold`; 'undetermined'
    otherwise. Thresholds default to the declared settings.
    """
    if len(polys) < 2:
        raise ValueError(f"Need at least two polynomials to classify a limit, got {len(polys)}")
    threshold = utils.settings.INFINITY_THRESHOLD if threshold is None else threshold
    tolerance = utils.settings.CAUCHY_TOLERANCE if tolerance is None else tolerance
    mesh = open_mesh(pd.variables, _interior_points(pd))
    values = [np.asarray(p.eval(mesh)) for p in polys]
    tail = values[min(len(values) // 2, len(values) - 2):]
    minima = [float(np.min(np.abs(v))) for v in tail]
    if minima[-1] > threshold and all(a <= b for a, b in zip(minima, minima[1:])):
        return 'infinity'
    finite = float(np.max(np.abs(tail[-1]))) < threshold
    # sup over pairs of the tail is at most twice the sup against its last entry
    spread = max(float(np.max(chi(v, tail[-1]))) for v in tail[:-1])
    if finite and spread < tolerance:
        return 'finite'
    return 'undetermined'
