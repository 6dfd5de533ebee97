"""Closed-form conformal maps from catalog Jordan domains onto the unit disc.

Every supported map is a Mobius transformation `phi(z) = (p z + q) / (r z + s)`,
so forward and inverse maps extend to the closures and compose exactly.
"""

from dataclasses import dataclass

import numpy as np

from expr.nodes import Const, Var, add, div, mul
from geometry.planar import AffineImage, Disc, MobiusDisc


@dataclass(frozen=True)
class ConformalPair:
    """A conformal map of `domain` onto the unit disc and its inverse.

    Fields:
    - domain -- the PlanarDomain
    - coefficients -- `(p, q, r, s)` of the forward map
    """

    domain: object
    coefficients: tuple

    @property
    def inverse_coefficients(self):
        p, q, r, s = self.coefficients
        return (s, -q, -r, p)

    @property
    def is_affine(self):
        return self.coefficients[2] == 0

    def forward(self, z):
        p, q, r, s = self.coefficients
        return (p * np.asarray(z) + q) / (r * np.asarray(z) + s)

    def inverse(self, w):
        p, q, r, s = self.inverse_coefficients
        return (p * np.asarray(w) + q) / (r * np.asarray(w) + s)

    def affine_form(self):
        """`(a, b)` with `phi(z) = a z + b`; only for affine maps."""
        if not self.is_affine:
            raise ValueError(f"The conformal map of {self.domain.to_config()} is not affine")
        p, q, _, s = self.coefficients
        return p / s, q / s

    def forward_expr(self, arg):
        return mobius_expr(self.coefficients, arg)

    def inverse_expr(self, arg):
        return mobius_expr(self.inverse_coefficients, arg)

    def check(self, count=500):
        """Largest round-trip error and boundary-to-circle error, measured on
        `count` boundary samples and `count` interior samples."""
        boundary = self.domain.boundary_samples(count)
        points = np.concatenate((boundary, self.domain.interior_samples(count)))
        round_trip = float(np.max(np.abs(self.inverse(self.forward(points)) - points)))
        on_circle = float(np.max(np.abs(np.abs(self.forward(boundary)) - 1)))
        return round_trip, on_circle


def mobius_expr(coefficients, arg):
    """`(p arg + q) / (r arg + s)` built with the folding constructors."""
    p, q, r, s = (Const(c) for c in coefficients)
    if isinstance(arg, int):
        arg = Var(arg)
    return div(add(mul(p, arg), q), add(mul(r, arg), s))


def _compose(coefficients, scale, shift):
    # phi(w / scale + shift) for w in the affine image.
    p, q, r, s = coefficients
    return (p / scale, p * shift + q, r / scale, r * shift + s)


def conformal(domain):
    """Return the ConformalPair of a catalog Jordan domain: discs, Mobius
    discs, and affine images of those.

    Raises ValueError for domains without a closed-form map (rectangles) and
    for domains whose boundary is not a Jordan curve.
    """
    if not domain.is_jordan:
        raise ValueError(f"{domain.to_config()} is not a Jordan domain; no conformal map extends to its closure")
    if isinstance(domain, Disc):
        return ConformalPair(domain, (1 + 0j, -domain.center, 0j, complex(domain.radius)))
    if isinstance(domain, MobiusDisc):
        a, b, c, d = domain.coefficients
        return ConformalPair(domain, (d, -b, -c, a))
    if isinstance(domain, AffineImage):
        base = conformal(domain.base)
        return ConformalPair(domain, _compose(base.coefficients, domain.scale, domain.shift))
    raise ValueError(f"No closed-form conformal map for {domain.to_config()}")
