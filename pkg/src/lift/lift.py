"""Simultaneous approximation of a function and its mixed derivatives.

For m variables and order n, approximate `g = d^{nm} f` by a polynomial Q,
take `A = T[Q]`, and add back `f - T[g]`, which is a finite sum of monomials
times restricted derivatives of f in fewer variables. Those are lifted
recursively with the same n, so every derivative of order at most n in each
variable of the final polynomial is close to that of f.
"""

from collections import Counter
from dataclasses import dataclass
import logging
import math

import numpy as np

from approx.backend import ToleranceUnreachable, approx_to_tolerance, measure_error
from approx.grids import GridSpec
from expr.calculus import differentiate
from expr.orders import MultiOrder
from geometry.product import normalize
from lift.report import ApproxReport, BudgetEntry
from lift.sections import (
    T_on_poly, derive_poly, expansion_expr, inclusion_exclusion_terms, top_derivative,
)
from lift.verify import SegmentLeavesDomainError, verify_T_identity
import utils.convert
import utils.settings


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LiftRequest:
    """Inputs of `lift`.

    Fields:
    - f -- expression in the product's variables
    - pd -- ProductDomain in original coordinates
    - n -- maximal derivative order per variable
    - epsilon -- total error budget

    Optional fields:
    - grid -- GridSpec, or None for the default of each sub-product's
      dimension
    - probe -- number of random points for the T-identity probe (0 disables)
    - seed -- seed of the probe's random generator
    """

    f: object
    pd: object
    n: int
    epsilon: float
    grid: GridSpec = None
    probe: int = 0
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, 'n', utils.convert.to_order(self.n))
        object.__setattr__(self, 'epsilon', utils.convert.to_positive(self.epsilon, 'epsilon'))
        missing = self.f.free_vars - set(self.pd.variables)
        if missing:
            names = ', '.join(f'z{v}' for v in sorted(missing))
            raise ValueError(f"Variables {names} of f are not factors of the domain")


def _grid_for(grid, pd):
    return grid if grid is not None else GridSpec.for_dimension(len(pd))


def _fit(e, pd, eps, path, ledger, grid, max_degree=None):
    """Run the backend and record the call; fall back to the best fit found."""
    try:
        result = approx_to_tolerance(e, pd, eps, grid=_grid_for(grid, pd), max_degree=max_degree)
    except ToleranceUnreachable as exc:
        logger.warning("%s: %s", '/'.join(path), exc)
        result = exc.best
    if result is None:
        ledger.append(BudgetEntry(path, pd.variables, eps, float('inf')))
        return None
    ledger.append(BudgetEntry(path, pd.variables, eps, result.error, result.method, result.degrees))
    return result


def monomial_weight(term, pd):
    """Largest sup over the normalized closure of any derivative of the
    term's monomial `prod z_v^k_v / k_v!` (at least 1)."""
    weight = 1.0
    for var, k in zip(term.subset, term.orders):
        r = pd.domain(var).sup_abs()
        weight *= max(r ** j / math.factorial(j) for j in range(k + 1))
    return weight


class _Lifter:
    def __init__(self, n, grid):
        self.n = n
        self.grid = grid
        self.ledger = []
        self.depths = Counter()
        self.top = None

    def run(self, f, pd, eps, path=(), depth=0):
        self.depths[depth] += 1
        m = len(pd)
        logger.debug("lift node %s on %s with budget %g", '/'.join(path) or 'root', pd.variables, eps)
        if self.n == 0 or m == 0:
            result = _fit(f, pd, eps, path + ('Q',), self.ledger, self.grid)
            return result.poly if result else None
        cap = utils.settings.max_degree() - self.n
        g = top_derivative(f, pd.variables, self.n)
        q = _fit(g, pd, eps / 2, path + ('Q',), self.ledger, self.grid, max_degree=max(cap, 0))
        if q is None:
            return None
        A = T_on_poly(q.poly, pd.variables, self.n)
        terms = inclusion_exclusion_terms(f, pd.variables, self.n)
        if depth == 0:
            self.top = (A, q, terms)
        share = eps / 2 / (2 ** m - 1)
        per_subset = Counter(term.subset for term in terms)
        P = A
        for term in terms:
            rest = [v for v in pd.variables if v not in term.subset]
            budget = share / self.n ** len(term.subset) / monomial_weight(term, pd)
            H = self.run(term.coefficient, pd.sub(rest), budget, path + (term.label,), depth + 1)
            if H is None:
                return None
            P = P + term.monomial * H if term.sign > 0 else P - term.monomial * H
        logger.debug("node %s combined %d section terms over %d subsets", '/'.join(path) or 'root',
                     len(terms), len(per_subset))
        return P


def _measure_all(f, P, pd, n, grid):
    degrees = P.degrees(pd.variables)
    grid = _grid_for(grid, pd)
    return {
        alpha: measure_error(differentiate(f, alpha), derive_poly(P, alpha), pd, degrees, grid)
        for alpha in MultiOrder.box(pd.variables, n)
    }


def lift(req):
    """Build one polynomial P with `|d^alpha P - d^alpha f|` below the budget
    for every alpha with `0 <= alpha_v <= n`.

    The product is normalized first (hypothesis failures raise
    HypothesisError); the budget is divided by `prod max(1, s_v)^n` so that
    errors measured in original coordinates stay within epsilon. Half of each
    node's budget goes to its top-derivative fit, the other half is split
    evenly across nonempty variable subsets, then across their Taylor terms,
    scaled down by the term's monomial weight.

    Unreachable fits do not abort: the best fit found is used, its ledger
    entry is marked unmet and `ApproxReport.success` is False. Raises
    ToleranceUnreachable only if a backend call produced no fit at all.
    """
    pd = normalize(req.pd)
    n = req.n
    shrink = float(np.prod([max(1.0, s) ** n for s in pd.scales]))
    f = pd.normalize_expr(req.f)
    lifter = _Lifter(n, req.grid)
    P = lifter.run(f, pd, req.epsilon / shrink)
    if P is None:
        raise ToleranceUnreachable(f"No fit found for some part of the lift of {req.f}")

    q_error, block_errors = None, {}
    if lifter.top is not None:
        A, q, terms = lifter.top
        q_error = q.error
        B = expansion_expr(f, terms)
        grid = _grid_for(req.grid, pd)
        # Measured on the grid Q was validated on.
        block_errors = {
            alpha: measure_error(differentiate(B, alpha), derive_poly(A, alpha), pd, q.degrees, grid)
            for alpha in MultiOrder.box(pd.variables, n)
        }

    probe = None
    if req.probe:
        rng = np.random.default_rng(req.seed)
        try:
            points = pd.to_normalized(req.pd.random_points(req.probe, rng))
            probe = verify_T_identity(f, pd, n, points)
        except SegmentLeavesDomainError as exc:
            logger.info("skipping T-identity probe: %s", exc)

    original = pd.denormalize(P)
    depths = tuple(lifter.depths[d] for d in range(max(lifter.depths) + 1))
    report = ApproxReport(
        poly=original,
        variables=pd.variables,
        n=n,
        epsilon=req.epsilon,
        errors=_measure_all(req.f, original, req.pd, n, req.grid),
        ledger=tuple(lifter.ledger),
        depths=depths,
        q_error=q_error,
        block_errors=block_errors,
        scales=pd.scales,
        shifts=pd.shifts,
        probe=probe,
    )
    logger.debug("lift finished: success=%s, max error %g", report.success, report.max_error)
    return report
