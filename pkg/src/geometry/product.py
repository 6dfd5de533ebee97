from dataclasses import dataclass, field, replace
import logging

import numpy as np

from expr.calculus import substitute
from expr.nodes import Var, add, div, as_expr
from geometry.hypotheses import HypothesisError, check_hypotheses
from geometry.planar import PlanarDomain
import utils.convert
import utils.settings


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ProductDomain:
    """An ordered product of planar domains, one per variable.

    When `normalized` is set, factor k is the image of the original factor
    under `w = scales[k] * (z - shifts[k])`, and `path_bounds[k]` is the
    estimated path bound of the normalized factor.

    Fields:
    - factors -- tuple of (variable id, PlanarDomain) pairs
    - scales -- tuple of positive floats (all 1 unless normalized)
    - shifts -- tuple of complex numbers (all 0 unless normalized)
    - normalized -- bool
    - path_bounds -- tuple of floats, or None when unknown
    - resolution -- grid spacing h used for geometric estimates
    """

    factors: tuple
    scales: tuple = None
    shifts: tuple = None
    normalized: bool = False
    path_bounds: tuple = None
    resolution: float = field(default=utils.settings.DEFAULT_RESOLUTION)

    def __post_init__(self):
        factors = []
        for var, domain in self.factors:
            if isinstance(var, Var):
                var = var.id
            if not isinstance(domain, PlanarDomain):
                raise TypeError(f"Factor for z{var} is not a planar domain: {domain!r}")
            factors.append((utils.convert.to_var_id(var), domain))
        variables = [v for v, _ in factors]
        if len(set(variables)) != len(variables):
            raise ValueError(f"Duplicate variables in product domain: {variables}")
        m = len(factors)
        scales = tuple(float(s) for s in self.scales) if self.scales is not None else (1.0,) * m
        shifts = tuple(complex(t) for t in self.shifts) if self.shifts is not None else (0j,) * m
        if len(scales) != m or len(shifts) != m:
            raise ValueError("Normalization data does not match the number of factors")
        object.__setattr__(self, 'factors', tuple(factors))
        object.__setattr__(self, 'scales', scales)
        object.__setattr__(self, 'shifts', shifts)
        object.__setattr__(self, 'resolution', utils.convert.to_positive(self.resolution, 'resolution'))

    @classmethod
    def of(cls, *domains, start=1, **kwargs):
        """Build `z<start> x z<start+1> x ...` from positional domains."""
        return cls(tuple(enumerate(domains, start)), **kwargs)

    @property
    def variables(self):
        return tuple(v for v, _ in self.factors)

    @property
    def domains(self):
        return tuple(d for _, d in self.factors)

    def __len__(self):
        return len(self.factors)

    def domain(self, var):
        for v, d in self.factors:
            if v == var:
                return d
        raise KeyError(f"z{var} is not a factor of this product domain")

    def index(self, var):
        return self.variables.index(var)

    def sub(self, variables):
        """Return the sub-product on `variables` (kept in this product's
        order), with the matching normalization data."""
        keep = [k for k, v in enumerate(self.variables) if v in set(variables)]
        missing = set(variables) - set(self.variables)
        if missing:
            raise KeyError(f"Variables {sorted(missing)} are not factors of this product domain")
        pick = lambda seq: tuple(seq[k] for k in keep) if seq is not None else None
        return replace(
            self,
            factors=pick(self.factors),
            scales=pick(self.scales),
            shifts=pick(self.shifts),
            path_bounds=pick(self.path_bounds),
        )

    def contains(self, points):
        """Vectorized membership for a (count, m) array of points."""
        points = utils.convert.to_points(points, len(self))
        inside = np.ones(len(points), dtype=bool)
        for k, domain in enumerate(self.domains):
            inside &= np.asarray(domain.contains(points[:, k]), dtype=bool)
        return inside

    def random_points(self, count, rng):
        """Draw `count` points uniformly from the product, by rejection
        sampling in each factor's bounding box.

        Returns a complex ndarray of shape (count, m).
        """
        columns = []
        for domain in self.domains:
            xmin, ymin, xmax, ymax = domain.bbox
            found = np.empty(0, dtype=np.complex128)
            while len(found) < count:
                z = rng.uniform(xmin, xmax, 2 * count) + 1j * rng.uniform(ymin, ymax, 2 * count)
                found = np.concatenate((found, z[np.asarray(domain.contains(z), dtype=bool)]))
            columns.append(found[:count])
        return np.stack(columns, axis=-1) if columns else np.zeros((count, 0), dtype=np.complex128)

    def to_normalized(self, points):
        """Map a (count, m) array of original points to normalized coordinates."""
        points = utils.convert.to_points(points, len(self))
        return np.asarray(self.scales) * (points - np.asarray(self.shifts))

    def normalize_expr(self, e):
        """Rewrite an expression in original coordinates as one in normalized
        coordinates (substitute `z -> z/s + t` per factor)."""
        mapping = {}
        for (var, _), s, t in zip(self.factors, self.scales, self.shifts):
            if s != 1 or t != 0:
                mapping[var] = add(div(Var(var), as_expr(s)), as_expr(t))
        return substitute(e, mapping) if mapping else e

    def denormalize(self, p):
        """Rewrite a CPoly in normalized coordinates as one in original
        coordinates (substitute `w -> s*z - s*t` per factor)."""
        for (var, _), s, t in zip(self.factors, self.scales, self.shifts):
            p = p.affine_substitute(var, s, -s * t)
        return p


def normalize(pd):
    """Translate and scale every factor so that 0 is interior and the estimated
    path bound is at most 1.

    Factor k is shifted by its interior point t_k and scaled by
    `s_k = 1 / (2 * max(M_k, diameter_k))`. Already normalized products are
    returned unchanged.

    Raises HypothesisError if a factor fails `check_hypotheses`.
    """
    if pd.normalized:
        return pd
    factors, scales, shifts, bounds = [], [], [], []
    for var, domain in pd.factors:
        diameter = domain.diameter()
        resolution = min(pd.resolution, diameter / 50)
        report = check_hypotheses(domain, resolution)
        if not report.passed:
            raise HypothesisError(f"z{var} {domain.to_config()}: " + '; '.join(report.failures()), report)
        s = 1 / (2 * max(report.path_bound, diameter))
        t = complex(domain.interior_point())
        factors.append((var, domain.affine(s, t)))
        scales.append(s)
        shifts.append(t)
        bounds.append(s * report.path_bound)
        logger.debug("normalized z%d: M=%g, diameter=%g, s=%g, t=%s", var, report.path_bound, diameter, s, t)
    return ProductDomain(
        tuple(factors),
        scales=tuple(scales),
        shifts=tuple(shifts),
        normalized=True,
        path_bounds=tuple(bounds),
        resolution=pd.resolution,
    )
