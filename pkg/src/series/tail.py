"""Functions of countably many variables given as series of one-variable
terms, `f(z) = sum_n f_n(z_n)`, and their reduction to finitely many
variables."""

from dataclasses import dataclass, field
from functools import lru_cache
import logging
import math

import numpy as np

from expr.calculus import differentiate_var
from expr.evaluate import evaluate
from expr.nodes import Const, Var, ZERO, add, as_expr, div, power
from expr.parser import parse
from series.rules import InsufficientBoundsError, PSeries
import utils.convert


logger = logging.getLogger(__name__)


class SeriesFunction:
    """`f(z) = sum_{n=1}^{horizon} term(n)` on the closed polydisc of the
    given radius, where `term(n)` is an expression in z_n alone and
    `|term(n)| <= bound(n)` there.

    Arguments:
    - term -- callable index -> expression, or an expression template with
      `{n}` placeholders such as `'z{n}^{n}/{n}^2'`
    - bound -- BoundRule (or any callable index -> float)

    Optional keyword arguments:
    - horizon (default None) -- last index; None for an infinite series,
      which can be reduced but not evaluated
    - radius (default 1) -- polydisc radius
    """

    def __init__(self, term, bound, *, horizon=None, radius=1.0):
        if isinstance(term, str):
            template = term
            term = lambda n: parse(template.format(n=n))
        self._term = lru_cache(maxsize=None)(term)
        self.bound = bound
        self.horizon = None if horizon is None else utils.convert.to_order(horizon)
        self.radius = utils.convert.to_positive(radius, 'radius')

    @classmethod
    def power_series(cls, horizon=None):
        """`sum z_n^n / n^2`, bounded by `1/n^2` on the unit polydisc."""
        return cls(lambda n: div(power(Var(n), n), Const(n * n)), PSeries(2), horizon=horizon)

    def term(self, n):
        e = as_expr(self._term(n))
        if not e.free_vars <= {n}:
            raise ValueError(f"Term {n} of the series depends on {sorted(e.free_vars)}, not only on z{n}")
        return e

    def indices(self):
        if self.horizon is None:
            raise ValueError("An infinite series has no finite index range; give it a horizon")
        return range(1, self.horizon + 1)

    def as_expr(self):
        result = ZERO
        for n in self.indices():
            result = add(result, self.term(n))
        return result

    def evaluate(self, z):
        """Evaluate at one or more points.

        Arguments:
        - z -- mapping from index to value(s), or an array whose last axis
          is indexed by n - 1; indices beyond the given ones are 0
        """
        if not hasattr(z, 'items'):
            z = np.asarray(z, dtype=np.complex128)
            z = {n: z[..., n - 1] for n in range(1, z.shape[-1] + 1)}
        shape = np.broadcast(*z.values()).shape if z else ()
        total = np.zeros(shape, dtype=np.complex128)
        for n in self.indices():
            total = total + evaluate(self.term(n), {n: z.get(n, 0)})
        return complex(total) if not shape else total

    def directional_derivative(self, point, direction=None):
        """`sum_n direction_n * term(n)'(z_n)` at a point given as a mapping
        index -> value (absent indices are 0); the direction defaults to all
        ones."""
        total = 0j
        for n in self.indices():
            nu = 1 if direction is None else direction.get(n, 0)
            if nu:
                total += nu * evaluate(differentiate_var(self.term(n), n), {n: point.get(n, 0)})
        return total


@dataclass(frozen=True)
class Anchor:
    """Default coordinates `zeta` for the variables dropped by a reduction.

    Fields:
    - values -- dict from index to complex; unlisted indices are 0
    """

    values: dict = field(default_factory=dict)

    def __getitem__(self, n):
        return complex(self.values.get(n, 0))

    def check(self, radius):
        for n, value in self.values.items():
            if abs(value) > radius:
                raise ValueError(f"Anchor coordinate {value} of z{n} lies outside the closed disc of radius {radius}")

    def project(self, support, z):
        """The point `w(F, zeta, z)`: keep coordinates in `support`, replace
        the others by the anchor. `z` is a mapping index -> value(s)."""
        return {n: (value if n in support else self[n]) for n, value in z.items()}


def _depends(f, n):
    return bool(f.term(n).free_vars)


def certified_prefix(f, epsilon):
    """Smallest `k` with `2 * sum_{n>k} b_n < epsilon / 2`, and that tail sum.

    Raises InsufficientBoundsError when no k works.
    """
    epsilon = utils.convert.to_positive(epsilon, 'epsilon')
    tail = _tail(f, 0)
    if math.isinf(tail):
        raise InsufficientBoundsError(f"The tail of {f.bound} diverges")
    k = 0
    while not 2 * tail < epsilon / 2:
        k += 1
        if f.horizon is not None and k > f.horizon:
            raise InsufficientBoundsError(f"Bounds cannot reach {epsilon} even with every variable")
        if f.horizon is None and k > 10 ** 6:
            raise InsufficientBoundsError(f"No prefix of up to 10^6 variables certifies {epsilon}")
        tail = _tail(f, k)
    return k, tail


def select_finite_support(f, epsilon):
    """Variables needed to approximate `f` within `epsilon / 2` on the polydisc.

    Returns `(support, tail)`: the frozenset `{n <= k : b_n > 0}` for the
    certified prefix k, without indices whose term is constant, and the
    certified bound `2 * sum_{n>k} b_n`.
    """
    k, tail = certified_prefix(f, epsilon)
    support = frozenset(n for n in range(1, k + 1) if f.bound(n) > 0 and _depends(f, n))
    logger.debug("certified support of %d variables (prefix %d), tail bound %g", len(support), k, 2 * tail)
    return support, 2 * tail


def _tail(f, k):
    if hasattr(f.bound, 'tail'):
        return f.bound.tail(k, f.horizon)
    if f.horizon is None:
        raise InsufficientBoundsError("Plain bound callables need a finite horizon")
    return math.fsum(f.bound(n) for n in range(k + 1, f.horizon + 1))


def restrict_to_finite(f, support, anchor=None, prefix=None):
    """Return `f(w(F, zeta, z))` as an expression in the variables of
    `support`: terms outside the support are evaluated at the anchor and
    folded into one constant.

    An infinite series is summed only up to `prefix` (default: the largest
    support index); the dropped terms are what the certified tail bounds.
    """
    anchor = anchor or Anchor()
    anchor.check(f.radius)
    if f.horizon is None:
        last = max(support, default=0) if prefix is None else utils.convert.to_order(prefix)
        indices = range(1, last + 1)
    else:
        indices = f.indices()
    result, constant = ZERO, 0j
    for n in indices:
        if n in support:
            result = add(result, f.term(n))
        else:
            constant += evaluate(f.term(n), {n: anchor[n]})
    return add(result, Const(constant))


def counterexample_directional(m):
    """`sum_{n=1}^m (1 - 1/m)^(n-1) / n`: the directional derivative of
    `sum z_n^n / n^2` in direction (1, 1, ...) at `z_n = 1 - 1/m`, n <= m.
    It grows like log m, so it has no bound on the closed polydisc."""
    m = utils.convert.to_order(m)
    if m < 1:
        raise ValueError(f"m must be at least 1, not {m}")
    n = np.arange(1, m + 1)
    return float(math.fsum((1 - 1 / m) ** (n - 1) / n))
