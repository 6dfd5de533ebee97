"""Polynomial approximation of expressions on products of planar domains.

Two fitting methods are available: a truncated Taylor expansion at 0 computed
with FFTs on a polycircle, and a tensor least-squares fit on the distinguished
boundary with an Arnoldi-orthogonalized basis per factor. `approx_to_tolerance`
escalates degrees across both until the validation error is below the target.
"""

from dataclasses import dataclass
import itertools
import logging
import math

import numpy as np

from approx.grids import GridSpec, evaluate_on_grid, poly_on_grid
from chordal.sphere import chi_sup
from expr.evaluate import EvaluationError
from poly.cpoly import CPoly, DegreeCapError, NotPolynomialError
import utils.arrays
import utils.settings


logger = logging.getLogger(__name__)

METRICS = ('uniform', 'chordal')
MIN_TAYLOR_NODES = 64


class RankDeficiencyError(ValueError):
    """Raised when the sampled polynomial basis loses rank."""


class ToleranceUnreachable(RuntimeError):
    """Raised when no fit within the degree caps reaches the tolerance.

    Public read-only properties:
    - best -- the FitResult with the smallest error found, or None if every
      attempt failed outright
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best


@dataclass(frozen=True)
class FitResult:
    """A polynomial approximant and its empirical sup error.

    Fields:
    - poly -- CPoly
    - error -- empirical sup error on the validation grid (uniform or
      chordal, see `metric`)
    - degrees -- tuple of per-variable degrees, in product order
    - method -- 'taylor' or 'lsq'
    - metric -- 'uniform' or 'chordal'
    """

    poly: CPoly
    error: float
    degrees: tuple
    method: str
    metric: str = 'uniform'

    def to_dict(self):
        return {
            'error': self.error,
            'degrees': list(self.degrees),
            'method': self.method,
            'metric': self.metric,
            'terms': len(self.poly),
            'error_kind': 'empirical sup on validation grid',
        }


def _check_degrees(degrees, max_degree=None):
    cap = utils.settings.max_degree() if max_degree is None else max_degree
    for d in degrees:
        if d < 0:
            raise ValueError(f"Degree must be non-negative, not {d}")
        if d > cap:
            raise DegreeCapError(f"Degree {d} exceeds the cap of {cap}")


def _tensor_to_poly(coefficients, variables):
    """Turn a tensor of monomial coefficients (axis k indexed by the exponent
    of variables[k]) into a CPoly."""
    terms = {}
    for index in zip(*np.nonzero(coefficients)):
        key = tuple((v, int(k)) for v, k in zip(variables, index) if k)
        terms[key] = coefficients[index]
    return CPoly(terms)


def _fft_size(degree):
    return 1 << (max(MIN_TAYLOR_NODES, 2 * (degree + 1)) - 1).bit_length()


def taylor_approx(e, variables, degrees, radii=None):
    """Truncated multivariate Taylor expansion of `e` at 0.

    Coefficients come from iterated Cauchy integrals on the polycircle
    `|z_v| = radii[v]`, evaluated with one tensor FFT.

    Arguments:
    - e -- expression, analytic on a polydisc containing the polycircle
    - variables -- sequence of variable ids
    - degrees -- per-variable degrees, same order as `variables`

    Optional arguments:
    - radii (default all 1) -- per-variable circle radii

    Raises DegreeCapError if a degree exceeds the cap, and EvaluationError if
    `e` has a pole on the polycircle.
    """
    variables, degrees = list(variables), [int(d) for d in degrees]
    _check_degrees(degrees)
    radii = [1.0] * len(variables) if radii is None else [float(r) for r in radii]
    if not variables:
        return CPoly.const(evaluate_on_grid(e, [], [])[()])
    sizes = [_fft_size(d) for d in degrees]
    # Shrink oversized node counts while they still exceed 2(d+1).
    while int(np.prod(sizes)) > utils.settings.MAX_VALIDATION_POINTS:
        k = int(np.argmax(sizes))
        if sizes[k] // 2 < 2 * (degrees[k] + 1):
            raise DegreeCapError(f"Taylor grid for degrees {degrees} exceeds the point limit")
        sizes[k] //= 2
    axes = [r * np.exp(2j * np.pi * np.arange(n) / n) for r, n in zip(radii, sizes)]
    samples = evaluate_on_grid(e, variables, axes)
    spectrum = np.fft.fftn(samples) / samples.size
    spectrum = spectrum[tuple(slice(0, d + 1) for d in degrees)]
    for k, r in enumerate(radii):
        scale = r ** -np.arange(degrees[k] + 1, dtype=float)
        spectrum = utils.arrays.mode_product(spectrum, np.diag(scale), k)
    return _tensor_to_poly(spectrum, variables)


def arnoldi_basis(nodes, degree):
    """Orthogonalize the Vandermonde basis on `nodes` by Arnoldi iteration.

    Returns `(Q, H)`, where Q has `degree + 1` columns with `Q^H Q = N I`
    (N = number of nodes) and H is the `(degree + 1, degree)` Hessenberg
    recurrence: `z q_k = sum_j H[j, k] q_j` for `j <= k + 1`.

    Each step orthogonalizes twice with modified Gram-Schmidt. Raises
    RankDeficiencyError if a new column is numerically dependent.
    """
    nodes = np.asarray(nodes, dtype=np.complex128)
    n = len(nodes)
    if n < degree + 1:
        raise RankDeficiencyError(f"{n} nodes cannot determine a degree-{degree} basis")
    scale = max(1.0, float(np.abs(nodes).max()))
    Q = np.zeros((n, degree + 1), dtype=np.complex128)
    H = np.zeros((degree + 1, degree), dtype=np.complex128)
    Q[:, 0] = 1
    for k in range(1, degree + 1):
        v = nodes * Q[:, k - 1]
        for _ in range(2):
            for j in range(k):
                h = np.vdot(Q[:, j], v) / n
                H[j, k - 1] += h
                v = v - h * Q[:, j]
        norm = np.linalg.norm(v) / math.sqrt(n)
        if norm <= 1e-13 * scale:
            raise RankDeficiencyError(f"Basis lost rank at degree {k} on {n} nodes")
        H[k, k - 1] = norm
        Q[:, k] = v / norm
    return Q, H


def monomial_matrix(H):
    """Monomial coefficients of the Arnoldi basis polynomials.

    Column k of the result holds the coefficients of q_k in 1, z, z^2, ...
    """
    size = H.shape[0]
    M = np.zeros((size, size), dtype=np.complex128)
    M[0, 0] = 1
    for k in range(1, size):
        shifted = np.zeros(size, dtype=np.complex128)
        shifted[1:] = M[:-1, k - 1]
        M[:, k] = (shifted - M[:, :k] @ H[:k, k - 1]) / H[k, k - 1]
    return M


def lsq_coefficients(e, pd, degrees, grid):
    """Least-squares polynomial for `e` on the distinguished boundary of `pd`."""
    variables = pd.variables
    axes = grid.fit_axes(pd, degrees)
    samples = evaluate_on_grid(e, variables, axes)
    coefficients = samples
    for k, (nodes, d) in enumerate(zip(axes, degrees)):
        Q, H = arnoldi_basis(nodes, d)
        # Kronecker products of per-factor orthogonal bases are orthogonal on
        # the tensor grid, so projecting one axis at a time solves the full
        # least-squares problem.
        coefficients = utils.arrays.mode_product(coefficients, Q.conj().T / len(nodes), k)
        coefficients = utils.arrays.mode_product(coefficients, monomial_matrix(H), k)
    return _tensor_to_poly(coefficients, variables)


def _basis_size(degrees):
    return int(np.prod([d + 1 for d in degrees]))


def measure_error(e, p, pd, degrees, grid, metric='uniform'):
    """Empirical sup distance between `e` and `p` on the validation grid for
    the given degrees, in the uniform or chordal metric. Points where `e` has
    a pole count as infinitely far in the uniform metric.
    """
    if metric not in METRICS:
        raise ValueError(f"Unknown metric {metric!r}; expected one of {METRICS}")
    axes = grid.validation_axes(pd, degrees)
    target = evaluate_on_grid(e, pd.variables, axes, poles='infinity')
    values = poly_on_grid(p, pd.variables, axes)
    if metric == 'chordal':
        return chi_sup(values, target)
    # Zero variables give 0-d arrays here.
    finite = np.isfinite(target) & np.isfinite(values)
    distances = np.where(finite, np.abs(np.where(finite, values - target, 0)), np.inf)
    return float(np.max(distances)) if distances.size else 0.0


def lsq_approx(e, pd, degrees, grid=None, metric='uniform'):
    """Fit `e` by least squares on the distinguished boundary of `pd` and
    measure the empirical sup error on the denser validation grid.

    Arguments:
    - e -- expression holomorphic on the product, continuous on its closure
    - pd -- ProductDomain
    - degrees -- per-variable degrees, in `pd` order

    Optional arguments:
    - grid (default: GridSpec.for_dimension(len(pd))) -- GridSpec
    - metric (default 'uniform') -- error metric, 'uniform' or 'chordal'

    Raises DegreeCapError or RankDeficiencyError.
    """
    degrees = tuple(int(d) for d in degrees)
    if len(degrees) != len(pd):
        raise ValueError(f"Expected {len(pd)} degrees, got {len(degrees)}")
    _check_degrees(degrees)
    if _basis_size(degrees) > utils.settings.MAX_BASIS_SIZE:
        raise DegreeCapError(f"Basis for degrees {degrees} exceeds {utils.settings.MAX_BASIS_SIZE} functions")
    grid = grid or GridSpec.for_dimension(len(pd))
    p = lsq_coefficients(e, pd, degrees, grid)
    return FitResult(p, measure_error(e, p, pd, degrees, grid, metric), degrees, 'lsq', metric)


def _exact(e, pd, grid, metric):
    try:
        p = CPoly.from_expr(e)
    except (NotPolynomialError, DegreeCapError, EvaluationError):
        return None
    degrees = p.degrees(pd.variables)
    return FitResult(p, measure_error(e, p, pd, degrees, grid, metric), degrees, 'taylor', metric)


def _attempts(e, pd, degree, grid, metric):
    """Yield FitResults for one uniform degree: Taylor first, then least
    squares. Methods that raise are skipped."""
    degrees = (degree,) * len(pd)
    radii = [domain.sup_abs() for domain in pd.domains]
    try:
        p = taylor_approx(e, pd.variables, degrees, radii)
        yield FitResult(p, measure_error(e, p, pd, degrees, grid, metric), degrees, 'taylor', metric)
    except (EvaluationError, DegreeCapError) as exc:
        logger.debug("taylor fit at degree %d skipped: %s", degree, exc)
    try:
        yield lsq_approx(e, pd, degrees, grid, metric)
    except (EvaluationError, DegreeCapError, RankDeficiencyError) as exc:
        logger.debug("lsq fit at degree %d skipped: %s", degree, exc)


def degree_schedule(cap):
    """Doubling degrees 1, 2, 4, ... ending exactly at `cap`."""
    degree = 1
    while degree < cap:
        yield degree
        degree *= 2
    yield cap


def approx_to_tolerance(e, pd, eps, grid=None, max_degree=None, metric='uniform'):
    """Find a polynomial within `eps` of `e` on `pd` (empirical sup).

    Polynomial expressions are converted exactly first. Otherwise degrees are
    doubled uniformly (Taylor, then least squares at each degree) until the
    validation error is below `eps`; the degree is then bisected down between
    the last failure and the first success, and the lowest successful degree
    is returned.

    Arguments:
    - e -- expression
    - pd -- ProductDomain containing every free variable of `e`
    - eps -- positive tolerance

    Optional arguments:
    - grid (default: GridSpec.for_dimension(len(pd))) -- GridSpec
    - max_degree (default: the degree cap) -- per-variable degree limit
    - metric (default 'uniform') -- 'uniform' or 'chordal'

    Raises ToleranceUnreachable (carrying the best FitResult) on failure.
    """
    missing = e.free_vars - set(pd.variables)
    if missing:
        raise ValueError(f"Variables {sorted(missing)} of {e} are not factors of the domain")
    grid = grid or GridSpec.for_dimension(len(pd))
    cap = utils.settings.max_degree() if max_degree is None else int(max_degree)
    best = None

    def consider(result):
        nonlocal best
        if best is None or result.error < best.error:
            best = result
        return result.error < eps

    exact = _exact(e, pd, grid, metric)
    if exact is not None and max(exact.degrees, default=0) <= cap:
        logger.debug("exact polynomial of degrees %s, error %g", exact.degrees, exact.error)
        if consider(exact):
            return exact
    if not len(pd):
        raise ToleranceUnreachable(f"Constant target {e} cannot be fit within {eps}", best)

    def succeed(degree):
        for result in _attempts(e, pd, degree, grid, metric):
            logger.debug("%s fit at degree %d: error %g", result.method, degree, result.error)
            if consider(result):
                return result
        return None

    failed, found = 0, None
    for degree in degree_schedule(cap):
        if (degree + 1) ** len(pd) > utils.settings.MAX_BASIS_SIZE:
            break
        found = succeed(degree)
        if found is not None:
            break
        failed = degree
    if found is None:
        raise ToleranceUnreachable(
            f"No fit of degree <= {cap} reached {eps:g}; best error {best.error:g}" if best else
            f"Every fit attempt failed for {e}", best)
    low, high = failed, max(found.degrees)
    while high - low > 1:
        mid = (low + high) // 2
        result = succeed(mid)
        if result is None:
            low = mid
        else:
            high, found = mid, result
    logger.debug("reached %g with %s at degree %d (error %g)", eps, found.method, high, found.error)
    return found
