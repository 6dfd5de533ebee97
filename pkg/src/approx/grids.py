"""Tensor sampling grids for fitting and validating polynomial approximants.

Fits sample the distinguished boundary (the product of factor boundaries);
validation uses boundary samples offset from the fit nodes plus an interior
lattice, `validation_factor` times denser per factor.
"""

from dataclasses import dataclass
import logging

import numpy as np

from expr.evaluate import evaluate
import utils.arrays
import utils.settings


logger = logging.getLogger(__name__)

# Minimum fit samples per factor, by number of factors.
BOUNDARY_COUNTS = {0: 1, 1: 64, 2: 32, 3: 8}
MIN_BOUNDARY_COUNT = 4


@dataclass(frozen=True)
class GridSpec:
    """Sampling densities for one product of `m` factors.

    Fields:
    - boundary_count -- minimum fit samples per factor boundary
    - validation_factor -- validation samples per fit sample, per factor
      (at least 2; defaults to 4)
    - max_points -- cap on the number of tensor validation points
    - interior -- whether validation includes interior lattice points
    """

    boundary_count: int
    validation_factor: int = utils.settings.VALIDATION_FACTOR
    max_points: int = utils.settings.MAX_VALIDATION_POINTS
    interior: bool = True

    def __post_init__(self):
        if self.boundary_count < 1:
            raise ValueError(f"boundary_count must be positive, not {self.boundary_count}")
        if self.validation_factor < 2:
            raise ValueError(f"Validation grids must be denser than fit grids (factor {self.validation_factor} < 2)")

    @classmethod
    def for_dimension(cls, m, **kwargs):
        return cls(BOUNDARY_COUNTS.get(m, MIN_BOUNDARY_COUNT), **kwargs)

    def fit_count(self, degree):
        """Fit samples per factor for a polynomial of the given degree."""
        return max(self.boundary_count, 2 * (degree + 1))

    def fit_axes(self, pd, degrees):
        """Return one array of fit nodes per factor."""
        return [domain.boundary_samples(self.fit_count(d)) for domain, d in zip(pd.domains, degrees)]

    def validation_axes(self, pd, degrees):
        """Return one array of validation nodes per factor.

        Each factor gets `validation_factor * fit_count` boundary samples,
        offset by half a step, plus about half as many interior points. If the
        tensor grid exceeds `max_points`, interior points are thinned first,
        then boundary points.
        """
        boundaries, interiors = [], []
        for domain, d in zip(pd.domains, degrees):
            count = self.validation_factor * self.fit_count(d)
            boundaries.append(domain.boundary_samples(count, phase=0.5))
            interiors.append(domain.interior_samples(count // 2) if self.interior else np.empty(0, complex))
        total = lambda: int(np.prod([len(b) + len(i) for b, i in zip(boundaries, interiors)]))
        if total() > self.max_points:
            logger.warning("validation grid of %d points exceeds %d; thinning", total(), self.max_points)
        while total() > self.max_points:
            # Halve the largest interior set first, then the largest boundary.
            k = int(np.argmax([len(i) for i in interiors]))
            if len(interiors[k]):
                interiors[k] = utils.arrays.thin_evenly(interiors[k], len(interiors[k]) // 2)
                continue
            k = int(np.argmax([len(b) for b in boundaries]))
            if len(boundaries[k]) <= self.boundary_count:
                break
            boundaries[k] = utils.arrays.thin_evenly(boundaries[k], len(boundaries[k]) // 2)
        return [np.concatenate((b, i)) for b, i in zip(boundaries, interiors)]


def open_mesh(variables, axes):
    """Return an assignment of broadcastable open-mesh arrays, one per
    variable, whose broadcast is the tensor grid of `axes`."""
    m = len(axes)
    return {
        var: np.asarray(axis).reshape((1,) * k + (-1,) + (1,) * (m - k - 1))
        for k, (var, axis) in enumerate(zip(variables, axes))
    }


def evaluate_on_grid(e, variables, axes, *, poles='raise'):
    """Evaluate an expression on the tensor grid of `axes`.

    Returns a complex ndarray of shape `tuple(len(a) for a in axes)`.
    """
    shape = tuple(len(a) for a in axes)
    values = evaluate(e, open_mesh(variables, axes), poles=poles)
    return np.array(np.broadcast_to(values, shape), dtype=np.complex128)


def poly_on_grid(p, variables, axes):
    """Evaluate a CPoly on the tensor grid of `axes`."""
    shape = tuple(len(a) for a in axes)
    values = p.eval(open_mesh(variables, axes))
    return np.array(np.broadcast_to(values, shape), dtype=np.complex128)
