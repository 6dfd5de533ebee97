"""Independent numeric oracle for mixed partial derivatives."""

import math

import numpy as np

from expr.evaluate import evaluate
from expr.orders import MultiOrder
import utils.arrays
import utils.convert
import utils.settings


def circle_nodes(count):
    """Return the `count` equispaced angles on [0, 2pi)."""
    return 2 * np.pi * np.arange(count) / count


def quadrature_count(dimensions, count=None):
    """Points per circle for a tensor trapezoid rule over `dimensions`
    circles.

    Starts from `count` (default: the configured quadrature size) and halves it
    until the full tensor grid fits in the validation point limit.
    """
    count = count or utils.settings.QUADRATURE_POINTS
    while dimensions > 1 and count > 16 and count ** dimensions > utils.settings.MAX_VALIDATION_POINTS:
        count //= 2
    return count


def numeric_derivative(e, order, point, radius, *, count=None):
    """Compute a mixed partial derivative of `e` by iterated Cauchy integrals.

    The trapezoid rule on each circle `|z_v - point_v| = radius` converges
    geometrically for integrands analytic on a neighborhood of the closed
    polydisc; that analyticity is the caller's responsibility.

    Arguments:
    - e -- expression tree
    - order -- MultiOrder or dict var -> order
    - point -- complex number (used for every free variable) or mapping from
      variable id to complex number
    - radius -- positive real

    Optional keyword arguments:
    - count (default 256) -- quadrature points per circle
    """
    radius = utils.convert.to_positive(radius, 'radius')
    order = order if isinstance(order, MultiOrder) else MultiOrder(order)
    if isinstance(point, dict):
        center = {utils.convert.to_var_id(v): complex(z) for v, z in point.items()}
    else:
        center = {v: complex(point) for v in e.free_vars | order.support}
    variables = sorted(order.support)
    if not variables:
        return evaluate(e, center)
    for v in variables:
        center.setdefault(v, 0j)
    count = quadrature_count(len(variables), count)
    theta = circle_nodes(count)
    unit = np.exp(1j * theta)
    axes = [center[v] + radius * unit for v in variables]
    grid = utils.arrays.nd_cartesian_grid(*axes)
    assignment = dict(center)
    for axis, v in enumerate(variables):
        assignment[v] = grid[..., axis]
    values = evaluate(e, assignment)
    # Contract each axis with the Fourier weight of its derivative order.
    for v in variables:
        k = order[v]
        weights = np.exp(-1j * k * theta) / count
        values = np.tensordot(weights, values, axes=(0, 0))
        values = values * math.factorial(k) / radius ** k
    return complex(values)
