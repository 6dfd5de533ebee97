"""An independent check of the inclusion-exclusion expansion.

`T[g]` is computed by quadrature: n-fold integration from 0 along the segment
`[0, z]` is `z^n * integral_0^1 (1-s)^(n-1) / (n-1)! * g(s z) ds` (Cauchy's
formula for repeated integration), done with a tensor Gauss-Legendre rule.
"""

import logging
import math

import numpy as np

from expr.evaluate import evaluate
from lift.sections import expansion_expr, inclusion_exclusion_terms, top_derivative
import utils.convert


logger = logging.getLogger(__name__)

GAUSS_POINTS = 32
SEGMENT_CHECKS = 64


class SegmentLeavesDomainError(ValueError):
    """Raised when a segment from 0 to a probe point leaves its factor."""


def _segment_weights(n):
    s, w = np.polynomial.legendre.leggauss(GAUSS_POINTS)
    s, w = (s + 1) / 2, w / 2
    return s, w * (1 - s) ** (n - 1) / math.factorial(n - 1)


def check_segments(pd, points):
    """Raise SegmentLeavesDomainError unless every segment `[0, z_v]` lies in
    factor v, for every point."""
    steps = np.linspace(0, 1, SEGMENT_CHECKS + 1)
    for k, (var, domain) in enumerate(pd.factors):
        for z in points[:, k]:
            if not np.all(domain.contains(steps * z)):
                raise SegmentLeavesDomainError(f"Segment from 0 to {z} leaves the domain of z{var}")


def T_by_quadrature(g, variables, n, point):
    """Evaluate `T[g]` at one point (a sequence of complex values, one per
    variable) by iterated segment quadrature."""
    point = np.asarray(point, dtype=np.complex128)
    s, w = _segment_weights(n)
    m = len(variables)
    grids = np.meshgrid(*([s] * m), indexing='ij')
    weights = np.ones((GAUSS_POINTS,) * m)
    for k in range(m):
        weights = weights * w.reshape((1,) * k + (-1,) + (1,) * (m - k - 1))
    values = evaluate(g, {v: grid * z for v, grid, z in zip(variables, grids, point)})
    return complex(np.prod(point ** n) * np.sum(weights * values))


def verify_T_identity(f, pd, n, points):
    """Compare `T[d^{nm} f]` by quadrature against its closed-form expansion.

    Arguments:
    - f -- expression
    - pd -- normalized ProductDomain (segments from 0 must stay inside)
    - n -- order per variable
    - points -- array of shape (count, m) of sample points in `pd`

    Returns the max deviation over the points. Raises
    SegmentLeavesDomainError if a segment from 0 leaves a factor.
    """
    variables = pd.variables
    points = utils.convert.to_points(points, len(variables))
    check_segments(pd, points)
    if n == 0:
        return 0.0
    g = top_derivative(f, variables, n)
    expansion = expansion_expr(f, inclusion_exclusion_terms(f, variables, n))
    closed = np.atleast_1d(evaluate(expansion, {v: points[:, k] for k, v in enumerate(variables)}))
    deviation = 0.0
    for point, value in zip(points, closed):
        deviation = max(deviation, abs(T_by_quadrature(g, variables, n, point) - value))
    logger.debug("T identity deviation over %d points: %g", len(points), deviation)
    return deviation
