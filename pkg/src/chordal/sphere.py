"""Points of the Riemann sphere and the chordal metric."""

from dataclasses import dataclass
import cmath

import numpy as np


@dataclass(frozen=True)
class SphereValue:
    """A point of the extended complex plane: a finite complex number, or the
    point at infinity (stored as `value=None`)."""

    value: complex = None

    def __post_init__(self):
        if self.value is not None:
            value = complex(self.value)
            object.__setattr__(self, 'value', value if cmath.isfinite(value) else None)

    @classmethod
    def infinity(cls):
        return cls(None)

    @property
    def is_infinite(self):
        return self.value is None

    def __complex__(self):
        return complex(np.inf, 0) if self.value is None else self.value

    def __str__(self):
        return 'inf' if self.value is None else str(self.value)


INFINITY = SphereValue.infinity()


def as_sphere_array(values):
    """Convert sphere values, complex numbers or arrays to a complex ndarray in
    which every non-finite entry stands for the point at infinity."""
    if isinstance(values, SphereValue):
        return np.asarray(complex(values))
    values = np.asarray(values)
    if values.dtype == object:
        return np.vectorize(complex, otypes=[np.complex128])(values)
    return values.astype(np.complex128)


def chi(a, b):
    """Chordal distance between points of the Riemann sphere; vectorized.

    `chi(a, b) = |a - b| / sqrt((1 + |a|^2) (1 + |b|^2))` for finite a, b and
    `chi(a, inf) = 1 / sqrt(1 + |a|^2)`. Any non-finite complex value (inf or
    nan in either part) is read as the point at infinity. Values lie in [0, 1].
    """
    a, b = as_sphere_array(a), as_sphere_array(b)
    a, b = np.broadcast_arrays(a, b)
    a_inf, b_inf = ~np.isfinite(a), ~np.isfinite(b)
    a_fin = np.where(a_inf, 0, a)
    b_fin = np.where(b_inf, 0, b)
    with np.errstate(over='ignore'):
        finite = np.abs(a_fin - b_fin) / (np.hypot(1, np.abs(a_fin)) * np.hypot(1, np.abs(b_fin)))
        to_a = 1 / np.sqrt(1 + np.abs(a_fin) ** 2)
        to_b = 1 / np.sqrt(1 + np.abs(b_fin) ** 2)
    result = np.where(a_inf & b_inf, 0.0,
             np.where(b_inf, to_a,
             np.where(a_inf, to_b, finite)))
    return float(result) if result.ndim == 0 else result


def chi_sup(values, targets):
    """Largest chordal distance between two arrays of sphere values."""
    distances = chi(values, targets)
    return float(np.max(distances)) if np.size(distances) else 0.0
