import numpy as np

import utils.arrays
import utils.convert


class Raster:
    """A planar domain sampled on a square grid.

    Pixel `(i, j)` sits at `origin + h*i + 1j*h*j`; the grid covers the
    domain's bounding box plus `padding` pixels on every side, so the outermost
    ring of pixels always lies outside the domain.

    Public read-only properties:
    - domain -- the PlanarDomain that was sampled
    - resolution -- float; grid spacing h
    - origin -- complex; coordinates of pixel (0, 0)
    - mask -- boolean ndarray of shape (nx, ny); which pixel centers lie in
      the domain
    - shape -- integer tuple; same as `mask.shape`
    - count -- integer; number of pixels inside the domain
    - positions -- complex ndarray of the inside pixel centers, in
      `np.flatnonzero(mask)` order
    """

    def __init__(self, domain, resolution, *, padding=3):
        self._domain = domain
        self._h = h = utils.convert.to_positive(resolution, 'resolution')
        xmin, ymin, xmax, ymax = domain.bbox
        xs = np.arange(xmin - padding * h, xmax + (padding + 0.5) * h, h)
        ys = np.arange(ymin - padding * h, ymax + (padding + 0.5) * h, h)
        self._origin = complex(xs[0], ys[0])
        self._grid = xs[:, np.newaxis] + 1j * ys[np.newaxis, :]
        self._mask = np.asarray(domain.contains(self._grid), dtype=bool)
        self._mask.flags.writeable = False

    @property
    def domain(self):
        return self._domain

    @property
    def resolution(self):
        return self._h

    @property
    def origin(self):
        return self._origin

    @property
    def mask(self):
        return self._mask

    @property
    def shape(self):
        return self._mask.shape

    @property
    def count(self):
        return int(np.count_nonzero(self._mask))

    @property
    def positions(self):
        return self._grid[self._mask]

    def pixel_centers(self, flat_indices):
        """Return the coordinates of pixels given by flat indices."""
        return self._grid.ravel()[flat_indices]

    def neighbor_pairs(self):
        """Yield `(first, second, length)` for each of the four half-neighborhood
        offsets of the 8-connected grid, where `first` and `second` are flat
        pixel indices of inside pixels adjacent along that offset.
        """
        nx, ny = self.shape
        index = np.arange(nx * ny).reshape(nx, ny)
        for dx, dy in ((1, 0), (0, 1), (1, 1), (1, -1)):
            a = (slice(0, nx - dx), slice(max(0, -dy), ny - max(0, dy)))
            b = (slice(dx, nx), slice(max(0, dy), ny - max(0, -dy)))
            both = self._mask[a] & self._mask[b]
            yield index[a][both], index[b][both], self._h * np.hypot(dx, dy)

    def supersample(self, flat_indices, offsets):
        """Return a boolean ndarray of shape (len(flat_indices), len(offsets))
        telling whether each pixel center shifted by each complex offset lies in
        the domain."""
        centers = self.pixel_centers(flat_indices)
        points = utils.arrays.nd_cartesian(centers, np.asarray(offsets, dtype=np.complex128)).sum(axis=1)
        inside = np.asarray(self._domain.contains(points), dtype=bool)
        return inside.reshape(len(centers), -1)

    def __repr__(self):
        return f'Raster({self._domain!r}, {self._h!r})'
