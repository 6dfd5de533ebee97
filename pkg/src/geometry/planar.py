"""Planar factor domains.

Every domain is an immutable, hashable dataclass with a vectorized
`contains()`, boundary and interior samplers, and `affine(s, t)`, which returns
the image of the domain under `w = s * (z - t)`.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
import math

import numpy as np

import utils.convert


BOUNDARY_SUP_SAMPLES = 4096


def resample_closed_polyline(vertices, count, phase=0.0):
    """Sample `count` points equally spaced by arc length along the closed
    polyline through complex `vertices`.

    `phase` (in units of the sample spacing, 0 <= phase < 1) shifts every
    sample along the curve; phase 0.5 lands halfway between the phase 0
    samples.
    """
    vertices = np.asarray(vertices, dtype=np.complex128)
    closed = np.append(vertices, vertices[:1])
    lengths = np.abs(np.diff(closed))
    arc = np.concatenate(([0.0], np.cumsum(lengths)))
    targets = (np.arange(count) + phase) * arc[-1] / count
    return np.interp(targets, arc, closed.real) + 1j * np.interp(targets, arc, closed.imag)


class PlanarDomain(ABC):
    """A bounded planar domain with nonempty interior.

    Public read-only properties:
    - bbox -- tuple (xmin, ymin, xmax, ymax) containing the closure
    - is_jordan -- bool; whether the boundary is a Jordan curve
    """

    is_jordan = True

    def contains(self, z):
        """Return whether `z` lies in the (open) domain; vectorized."""
        z = np.asarray(z, dtype=np.complex128)
        inside = self._contains(z)
        return bool(inside) if inside.ndim == 0 else inside

    @abstractmethod
    def _contains(self, z):
        ...

    @abstractmethod
    def boundary_samples(self, count, phase=0.0):
        """Return `count` points on the boundary, as a complex ndarray."""
        ...

    @property
    @abstractmethod
    def bbox(self):
        ...

    @abstractmethod
    def interior_point(self):
        ...

    def affine(self, s, t):
        """Return the image of this domain under `w = s * (z - t)`."""
        return AffineImage(self, float(s), complex(t))

    def interior_samples(self, count):
        """Return roughly `count * area / bbox_area` points of a square
        lattice inside the domain (deterministic)."""
        xmin, ymin, xmax, ymax = self.bbox
        step = math.sqrt((xmax - xmin) * (ymax - ymin) / max(count, 1))
        xs = np.arange(xmin + step / 2, xmax, step)
        ys = np.arange(ymin + step / 2, ymax, step)
        lattice = (xs[:, np.newaxis] + 1j * ys[np.newaxis, :]).ravel()
        return lattice[self.contains(lattice)]

    def sup_abs(self):
        """Return max |z| over the closure, measured on dense boundary samples."""
        return float(np.abs(self.boundary_samples(BOUNDARY_SUP_SAMPLES)).max())

    def diameter(self, count=512):
        """Return the largest distance between `count` boundary samples."""
        b = self.boundary_samples(count)
        return float(np.abs(b[:, np.newaxis] - b[np.newaxis, :]).max())


@dataclass(frozen=True)
class Disc(PlanarDomain):
    center: complex
    radius: float

    def __post_init__(self):
        object.__setattr__(self, 'center', complex(self.center))
        object.__setattr__(self, 'radius', utils.convert.to_positive(self.radius, 'radius'))

    def _contains(self, z):
        return np.abs(z - self.center) < self.radius

    def boundary_samples(self, count, phase=0.0):
        theta = 2 * np.pi * (np.arange(count) + phase) / count
        return self.center + self.radius * np.exp(1j * theta)

    @property
    def bbox(self):
        c, r = self.center, self.radius
        return (c.real - r, c.imag - r, c.real + r, c.imag + r)

    def interior_point(self):
        return self.center

    def affine(self, s, t):
        return Disc(s * (self.center - t), abs(s) * self.radius)

    def sup_abs(self):
        return abs(self.center) + self.radius

    def diameter(self, count=512):
        return 2 * self.radius

    def to_config(self):
        return f'disc {self.center.real!r} {self.center.imag!r} {self.radius!r}'


@dataclass(frozen=True)
class Rect(PlanarDomain):
    x0: float
    y0: float
    x1: float
    y1: float

    def __post_init__(self):
        x0, x1 = sorted((float(self.x0), float(self.x1)))
        y0, y1 = sorted((float(self.y0), float(self.y1)))
        if x0 == x1 or y0 == y1:
            raise ValueError(f"Rectangle with corners ({x0}, {y0}) and ({x1}, {y1}) has empty interior")
        for name, value in zip(('x0', 'y0', 'x1', 'y1'), (x0, y0, x1, y1)):
            object.__setattr__(self, name, value)

    def _contains(self, z):
        return (self.x0 < z.real) & (z.real < self.x1) & (self.y0 < z.imag) & (z.imag < self.y1)

    def boundary_samples(self, count, phase=0.0):
        corners = [complex(self.x0, self.y0), complex(self.x1, self.y0),
                   complex(self.x1, self.y1), complex(self.x0, self.y1)]
        return resample_closed_polyline(corners, count, phase)

    @property
    def bbox(self):
        return (self.x0, self.y0, self.x1, self.y1)

    def interior_point(self):
        return complex((self.x0 + self.x1) / 2, (self.y0 + self.y1) / 2)

    def affine(self, s, t):
        s, t = float(s), complex(t)
        return Rect(s * (self.x0 - t.real), s * (self.y0 - t.imag),
                    s * (self.x1 - t.real), s * (self.y1 - t.imag))

    def diameter(self, count=512):
        return math.hypot(self.x1 - self.x0, self.y1 - self.y0)

    def to_config(self):
        return f'rect {self.x0!r} {self.y0!r} {self.x1!r} {self.y1!r}'


@dataclass(frozen=True)
class MobiusDisc(PlanarDomain):
    """The image of the unit disc under `M(w) = (a*w + b) / (c*w + d)`.

    Requires `a*d - b*c != 0` and `|d| > |c|`, so the pole of M lies outside
    the closed disc and the image is a bounded disc.
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        for name in 'abcd':
            object.__setattr__(self, name, complex(getattr(self, name)))
        if self.a * self.d - self.b * self.c == 0:
            raise ValueError(f"Degenerate Mobius coefficients {self.coefficients}: ad - bc = 0")
        if not abs(self.d) > abs(self.c):
            raise ValueError(f"Mobius coefficients {self.coefficients} send the closed disc through infinity (need |d| > |c|)")

    @property
    def coefficients(self):
        return (self.a, self.b, self.c, self.d)

    def forward(self, w):
        """Evaluate M (unit disc to this domain)."""
        return (self.a * w + self.b) / (self.c * w + self.d)

    def inverse(self, z):
        """Evaluate the inverse of M (this domain to the unit disc)."""
        return (self.d * z - self.b) / (-self.c * z + self.a)

    def _contains(self, z):
        denominator = -self.c * z + self.a
        safe = np.where(denominator == 0, 1, denominator)
        w = (self.d * z - self.b) / safe
        return (denominator != 0) & (np.abs(w) < 1)

    def boundary_samples(self, count, phase=0.0):
        theta = 2 * np.pi * (np.arange(count) + phase) / count
        return self.forward(np.exp(1j * theta))

    @property
    def image_circle(self):
        """Center and radius of the image disc."""
        a, b, c, d = self.coefficients
        denominator = abs(d) ** 2 - abs(c) ** 2
        center = (b * d.conjugate() - a * c.conjugate()) / denominator
        radius = abs(a * d - b * c) / denominator
        return center, radius

    @property
    def bbox(self):
        center, radius = self.image_circle
        return (center.real - radius, center.imag - radius, center.real + radius, center.imag + radius)

    def interior_point(self):
        return self.b / self.d

    def affine(self, s, t):
        s, t = float(s), complex(t)
        return MobiusDisc(s * (self.a - t * self.c), s * (self.b - t * self.d), self.c, self.d)

    def sup_abs(self):
        center, radius = self.image_circle
        return abs(center) + radius

    def diameter(self, count=512):
        return 2 * self.image_circle[1]

    def to_config(self):
        return 'mobius ' + ' '.join(_complex_text(x) for x in self.coefficients)


@dataclass(frozen=True)
class SineComb(PlanarDomain):
    """The set `{x + iy : 0 < x < 1, -5 < y < sin(1/x)}`.

    Its closure has connected complement and its closure's interior is the
    domain itself, but the boundary is not a Jordan curve.
    """

    is_jordan = False

    # The oscillating top edge is traced down to this x for boundary samples.
    trace_limit = 0.01

    def _contains(self, z):
        x, y = z.real, z.imag
        positive = x > 0
        safe = np.where(positive, x, 1.0)
        return positive & (x < 1) & (y > -5) & (y < np.sin(1 / safe))

    def boundary_samples(self, count, phase=0.0):
        u = np.linspace(1, 1 / self.trace_limit, 4000)
        top = 1 / u + 1j * np.sin(u)
        vertices = np.concatenate((
            [complex(0, -5), complex(1, -5)],
            top,
            [complex(0, 1)],
        ))
        return resample_closed_polyline(vertices, count, phase)

    @property
    def bbox(self):
        return (0.0, -5.0, 1.0, 1.0)

    def interior_point(self):
        return complex(0.5, -2)

    def to_config(self):
        return 'sinecomb'


@dataclass(frozen=True)
class Annulus(PlanarDomain):
    """`{z : r0 < |z - center| < r1}`; its closure's complement is
    disconnected, so it fails the hypothesis check."""

    center: complex
    inner: float
    outer: float

    is_jordan = False

    def __post_init__(self):
        object.__setattr__(self, 'center', complex(self.center))
        inner = utils.convert.to_positive(self.inner, 'inner radius')
        outer = utils.convert.to_positive(self.outer, 'outer radius')
        if inner >= outer:
            raise ValueError(f"Annulus inner radius {inner} must be below outer radius {outer}")
        object.__setattr__(self, 'inner', inner)
        object.__setattr__(self, 'outer', outer)

    def _contains(self, z):
        r = np.abs(z - self.center)
        return (self.inner < r) & (r < self.outer)

    def boundary_samples(self, count, phase=0.0):
        inner_count = max(1, round(count * self.inner / (self.inner + self.outer)))
        outer_count = count - inner_count
        inner = Disc(self.center, self.inner).boundary_samples(inner_count, phase)
        outer = Disc(self.center, self.outer).boundary_samples(outer_count, phase)
        return np.concatenate((outer, inner))

    @property
    def bbox(self):
        return Disc(self.center, self.outer).bbox

    def interior_point(self):
        return self.center + (self.inner + self.outer) / 2

    def affine(self, s, t):
        s = float(s)
        return Annulus(s * (self.center - complex(t)), abs(s) * self.inner, abs(s) * self.outer)

    def diameter(self, count=512):
        return 2 * self.outer

    def to_config(self):
        return f'annulus {self.center.real!r} {self.center.imag!r} {self.inner!r} {self.outer!r}'


@dataclass(frozen=True)
class AffineImage(PlanarDomain):
    """The image of `base` under `w = scale * (z - shift)`."""

    base: PlanarDomain
    scale: float
    shift: complex

    def __post_init__(self):
        object.__setattr__(self, 'scale', utils.convert.to_positive(self.scale, 'scale'))
        object.__setattr__(self, 'shift', complex(self.shift))

    @property
    def is_jordan(self):
        return self.base.is_jordan

    def to_base(self, w):
        return w / self.scale + self.shift

    def from_base(self, z):
        return self.scale * (z - self.shift)

    def _contains(self, z):
        return np.asarray(self.base.contains(self.to_base(z)))

    def boundary_samples(self, count, phase=0.0):
        return self.from_base(self.base.boundary_samples(count, phase))

    @property
    def bbox(self):
        xmin, ymin, xmax, ymax = self.base.bbox
        low = self.from_base(complex(xmin, ymin))
        high = self.from_base(complex(xmax, ymax))
        return (low.real, low.imag, high.real, high.imag)

    def interior_point(self):
        return self.from_base(self.base.interior_point())

    def affine(self, s, t):
        return AffineImage(self.base, self.scale * s, self.shift + complex(t) / self.scale)

    def diameter(self, count=512):
        return self.scale * self.base.diameter(count)

    def to_config(self):
        return f'affine {self.scale!r} {self.shift.real!r} {self.shift.imag!r} {self.base.to_config()}'


def _complex_text(value):
    # Expression-literal syntax with no spaces, e.g. `2.0`, `-1.5i`, `3.0-4.0i`.
    re, im = value.real, value.imag
    if im == 0:
        return repr(re)
    if re == 0:
        return f'{im!r}i'
    sign = '-' if im < 0 else '+'
    return f'{re!r}{sign}{abs(im)!r}i'
