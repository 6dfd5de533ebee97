"""Intrinsic path-length bounds of planar domains, estimated on grid graphs."""

from functools import lru_cache
import logging
import math

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components, dijkstra

from geometry.raster import Raster
import utils.convert
import utils.settings


logger = logging.getLogger(__name__)


class DisconnectedGridError(ValueError):
    """Raised when the grid of inside pixels is not connected at the requested
    resolution (or has fewer than two pixels)."""


def segment_inside(domain, a, b, step):
    """Return whether the straight segment from `a` to `b` stays in `domain`,
    checked at points spaced at most `step` apart (endpoints included)."""
    count = max(2, math.ceil(abs(b - a) / step) + 1)
    t = np.linspace(0.0, 1.0, count)
    return bool(np.all(domain.contains(a + t * (b - a))))


def grid_graph(raster):
    """Return `(graph, flat_indices)`: the 8-connected grid graph of the inside
    pixels of `raster` with Euclidean edge lengths, as a sparse CSR matrix whose
    node k is the pixel `flat_indices[k]`.
    """
    inside = np.flatnonzero(raster.mask)
    node = np.full(raster.mask.size, -1, dtype=np.int64)
    node[inside] = np.arange(len(inside))
    rows, cols, weights = [], [], []
    for first, second, length in raster.neighbor_pairs():
        rows.append(node[first])
        cols.append(node[second])
        weights.append(np.full(len(first), length))
    if rows:
        rows, cols, weights = map(np.concatenate, (rows, cols, weights))
    n = len(inside)
    graph = coo_matrix((weights, (rows, cols)), shape=(n, n)).tocsr()
    return graph, inside


@lru_cache(maxsize=64)
def _path_bound(domain, resolution, samples):
    raster = Raster(domain, resolution)
    graph, inside = grid_graph(raster)
    n = len(inside)
    if n < 2:
        raise DisconnectedGridError(
            f"{domain} has {n} grid point(s) at resolution {resolution}; refine the resolution")
    components, _ = connected_components(graph, directed=False)
    if components > 1:
        raise DisconnectedGridError(
            f"{domain} splits into {components} grid components at resolution {resolution}")

    # Farthest-point sampling, starting from the node farthest from node 0.
    samples = min(samples, n)
    start = dijkstra(graph, directed=False, indices=0)
    chosen = [int(np.argmax(start))]
    nearest = np.full(n, np.inf)
    pairwise = np.zeros((samples, samples))
    for k in range(samples):
        distances = dijkstra(graph, directed=False, indices=chosen[k])
        pairwise[k, :k] = distances[chosen[:k]]
        nearest = np.minimum(nearest, distances)
        if k + 1 < samples:
            chosen.append(int(np.argmax(nearest)))

    # The grid metric overestimates straight distances by up to ~8%; use the
    # straight distance for pairs whose segment stays in the domain.
    points = raster.pixel_centers(inside[chosen])
    i, j = np.tril_indices(samples, -1)
    grid_lengths = pairwise[i, j]
    order = np.argsort(grid_lengths)[::-1]
    best = 0.0
    for k in order:
        if grid_lengths[k] <= best:
            break
        a, b = points[i[k]], points[j[k]]
        straight = abs(b - a)
        if straight < grid_lengths[k] and segment_inside(domain, a, b, resolution / 2):
            best = max(best, straight)
        else:
            best = max(best, grid_lengths[k])
    logger.debug("path bound of %s at h=%g: %g (%d grid points, %d samples)",
                 domain, resolution, best, n, samples)
    return float(best)


def estimate_path_bound(domain, resolution=None, samples=None):
    """Estimate sup over point pairs of the shortest in-domain path length.

    Shortest paths run on the 8-connected grid graph of inside pixels at
    resolution `h`; the sup is taken over all pairs of `samples`
    farthest-point-sampled pixels. The result is an estimate at resolution, not
    a certified bound.

    Optional arguments:
    - resolution (default 0.01) -- grid spacing h
    - samples (default 200) -- number of farthest-point samples

    Raises DisconnectedGridError if the grid is disconnected at resolution h.
    """
    resolution = utils.convert.to_positive(
        utils.settings.DEFAULT_RESOLUTION if resolution is None else resolution, 'resolution')
    samples = int(samples or utils.settings.PATH_SAMPLE_COUNT)
    return _path_bound(domain, resolution, samples)
