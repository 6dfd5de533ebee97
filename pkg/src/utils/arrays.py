import numpy as np


def nd_cartesian_grid(*arrays, repeat=1):
    """Generate a Cartesian product of ndarrays, arranged in a grid.

    The element at index `(i0, i1, ..., iN)` in the return value is an array of
    `[a0[i0], a1[i1], ... aN[iN]]`, where aN is the Nth ndarray of `arrays`.
    Complex inputs produce a complex grid.
    """
    return np.stack(np.meshgrid(*arrays * repeat, indexing='ij'), -1)


def nd_cartesian(*arrays, repeat=1):
    """Generate a Cartesian product of ndarrays.

    The order of the returned values is the same as `itertools.product`.
    """
    return nd_cartesian_grid(*arrays, repeat=repeat).reshape(-1, len(arrays) * repeat)


def mode_product(tensor, matrix, axis):
    """Multiply `matrix` into one axis of `tensor`.

    The result has `matrix.shape[0]` entries along `axis`; every other axis is
    unchanged. This is the n-mode product used for tensor-grid least squares.
    """
    moved = np.moveaxis(tensor, axis, 0)
    shape = moved.shape
    product = matrix @ moved.reshape(shape[0], -1)
    return np.moveaxis(product.reshape((matrix.shape[0],) + shape[1:]), 0, axis)


def thin_evenly(array, count):
    """Return at most `count` entries of a 1D array, evenly spaced by index."""
    if count >= len(array):
        return array
    if count <= 0:
        return array[:0]
    indices = np.unique(np.linspace(0, len(array) - 1, count).round().astype(np.int64))
    return array[indices]
