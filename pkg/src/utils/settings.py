"""Declared numeric constants shared across merglift.

Everything here is a plain module-level constant except the degree cap, which
can be overridden per process through the `MERGLIFT_MAX_DEGREE` environment
variable and is therefore read at call time.
"""

import os

DEFAULT_RESOLUTION = 0.01
PATH_SAMPLE_COUNT = 200
QUADRATURE_POINTS = 256
DEFAULT_MAX_DEGREE = 128
MAX_BASIS_SIZE = 4096
MAX_VALIDATION_POINTS = 2 ** 20
VALIDATION_FACTOR = 4

INFINITY_THRESHOLD = 1e3
CAUCHY_TOLERANCE = 1e-3

MAX_DEGREE_ENV = 'MERGLIFT_MAX_DEGREE'


def max_degree():
    """Return the per-variable degree cap.

    Reads `MERGLIFT_MAX_DEGREE` if it is set; raises a ValueError if the
    variable holds something other than a positive integer.
    """
    raw = os.environ.get(MAX_DEGREE_ENV)
    if raw is None or not raw.strip():
        return DEFAULT_MAX_DEGREE
    try:
        cap = int(raw)
        assert cap >= 1
        return cap
    except Exception:
        pass
    raise ValueError(f"{MAX_DEGREE_ENV}={raw!r} is not a positive integer.")
