import numbers

import numpy as np


def to_order(order):
    """Convert `order` to an integer >= 0, or raise a ValueError if it cannot
    be converted.
    """
    try:
        n = int(order)
        assert n >= 0 and n == order
        return n
    except Exception:
        pass
    raise ValueError(f"Argument {order} is not convertible to a derivative order.")


def to_var_id(var):
    """Convert `var` to a variable index (integer >= 0), or raise a ValueError
    if it cannot be converted.

    Strings of the form `z<digits>` or `<digits>` are accepted as well as
    plain integers.
    """
    try:
        text = var
        if isinstance(var, str):
            text = var[1:] if var[:1] == 'z' else var
            assert text.isdigit()
        v = int(text)
        assert v >= 0
        return v
    except Exception:
        pass
    raise ValueError(f"Argument {var!r} is not convertible to a variable index.")


def to_positive(value, name='value'):
    """Convert `value` to a finite float > 0, or raise a ValueError."""
    try:
        x = float(value)
        assert np.isfinite(x) and x > 0
        return x
    except Exception:
        pass
    raise ValueError(f"Argument {name}={value!r} is not a positive real number.")


def to_complex(value):
    """Convert `value` to a Python complex number, or raise a ValueError if it
    cannot be converted.

    Accepts numbers, numpy scalars, and `(re, im)` pairs.
    """
    if isinstance(value, numbers.Number):
        return complex(value)
    try:
        re, im = value
        return complex(float(re), float(im))
    except Exception:
        pass
    raise ValueError(f"Argument {value!r} is not convertible to a complex number.")


def to_points(points, dimensions=None):
    """Convert `points` to a 2D complex ndarray of shape (count, dimensions),
    or raise a ValueError if it cannot be converted.

    A 1D input is read as a single point. If `dimensions` is None (the
    default), then any number of dimensions is allowed.
    """
    try:
        points = np.array(points, dtype=np.complex128)
        if points.ndim == 1:
            points = points[np.newaxis, :]
        assert points.ndim == 2
        if dimensions is not None:
            assert points.shape[1] == dimensions
        return points
    except Exception:
        pass
    msg = f"Argument {points!r} is not convertible to a point ndarray"
    if dimensions is not None:
        msg += f" with {dimensions} columns"
    raise ValueError(msg)
