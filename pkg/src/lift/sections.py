"""The algebraic pieces of the derivative lift.

With `P_v^n f = sum_{k<n} z_v^k / k! * (d^k f / dz_v^k)(z_v = 0)` and
`T = prod_v T_v^n` (n-fold antidifferentiation from 0 in each variable),
Taylor's formula gives `T[d^{nm} f] = prod_v (Id - P_v^n) f`. Expanding the
product over subsets of variables turns this into a finite sum of monomials
times restricted derivatives of f, which is what `inclusion_exclusion_terms`
returns.
"""

from dataclasses import dataclass
import itertools
import math

from expr.calculus import differentiate, differentiate_var, restrict
from expr.nodes import ZERO
from expr.orders import MultiOrder
from poly.cpoly import CPoly


def top_derivative(f, variables, n):
    """Return the mixed derivative of order n in each of `variables`."""
    return differentiate(f, MultiOrder({v: n for v in variables}))


def T_on_poly(q, variables, n):
    """Integrate `q` n times from 0 in each of `variables`."""
    if n < 1:
        raise ValueError(f"T needs n >= 1, not {n}")
    for var in variables:
        q = q.antiderive_from_zero(var, n)
    return q


def taylor_section(f, var, n):
    """Split `P_var^n f` into `n` pairs `(z_var^k / k!, restricted derivative)`.

    The k-th pair is the CPoly `z_var^k / k!` and the expression
    `(d^k f / dz_var^k)(z_var = 0)`, which no longer mentions z_var.
    """
    if n < 1:
        raise ValueError(f"Taylor section needs n >= 1, not {n}")
    return [
        (CPoly.monomial({var: k}, 1 / math.factorial(k)), restrict(differentiate_var(f, var, k), var, 0))
        for k in range(n)
    ]


@dataclass(frozen=True)
class SectionTerm:
    """One term `sign * monomial * coefficient` of
    `sum_{S nonempty} (-1)^(|S|+1) (prod_{v in S} P_v^n) f`.

    Fields:
    - subset -- tuple of variable ids S, sorted
    - orders -- tuple of Taylor indices k_v for v in S
    - sign -- +1 or -1
    - monomial -- CPoly `prod z_v^(k_v) / k_v!`
    - coefficient -- expression in the variables outside S
    """

    subset: tuple
    orders: tuple
    sign: int
    monomial: CPoly
    coefficient: object

    @property
    def label(self):
        return '{' + ','.join(f'z{v}:{k}' for v, k in zip(self.subset, self.orders)) + '}'


def _sections(f, subset, n):
    pieces = [((), CPoly.const(1), f)]
    for var in subset:
        pieces = [
            (orders + (k,), monomial * section_monomial, h)
            for orders, monomial, g in pieces
            for k, (section_monomial, h) in enumerate(taylor_section(g, var, n))
        ]
    return pieces


def inclusion_exclusion_terms(f, variables, n, *, keep_zero=False):
    """List the SectionTerms of `f - T[d^{nm} f]` over every nonempty subset
    of `variables`, in order of subset size and then lexicographically.

    Terms whose coefficient folded to 0 are dropped unless `keep_zero`.
    """
    variables = sorted(variables)
    terms = []
    for size in range(1, len(variables) + 1):
        sign = 1 if size % 2 else -1
        for subset in itertools.combinations(variables, size):
            for orders, monomial, h in _sections(f, subset, n):
                if h == ZERO and not keep_zero:
                    continue
                terms.append(SectionTerm(subset, orders, sign, monomial, h))
    return terms


def expansion_expr(f, terms):
    """Return `f - sum(sign * monomial * coefficient)`, i.e. T[d^{nm} f], as an
    expression."""
    result = f
    for term in terms:
        piece = term.monomial.to_expr() * term.coefficient
        result = result - piece if term.sign > 0 else result + piece
    return result


def derive_poly(p, order):
    """Apply a MultiOrder derivative to a CPoly."""
    for var, times in order.items():
        p = p.derive(var, times)
    return p
