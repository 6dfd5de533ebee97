from collections import defaultdict
from functools import singledispatch
import math
import numbers

import numpy as np

from expr.evaluate import EvaluationError, evaluate
from expr.nodes import Add, Const, Cos, Div, Exp, Mul, Neg, Pow, Sin, Var, ZERO, add, as_expr, mul, power
import utils.convert
import utils.settings


class DegreeCapError(ValueError):
    """Raised when a polynomial would exceed the per-variable degree cap."""


class NotPolynomialError(ValueError):
    """Raised when an expression is not a polynomial in its variables."""


def _monomial_key(monomial):
    """Normalize a monomial given as a mapping or as (var, exponent) pairs to a
    sorted tuple of (var, exponent) pairs with positive exponents.
    """
    if hasattr(monomial, 'items'):
        monomial = monomial.items()
    exponents = defaultdict(int)
    for var, exponent in monomial:
        if isinstance(var, Var):
            var = var.id
        exponents[utils.convert.to_var_id(var)] += utils.convert.to_order(exponent)
    return tuple(sorted((v, k) for v, k in exponents.items() if k))


class CPoly:
    """An immutable sparse polynomial in indexed complex variables.

    Terms are stored as a dict from monomial keys to complex coefficients. A
    monomial key is a tuple of `(var, exponent)` pairs sorted by var id, with
    `()` for the constant term. Exactly zero coefficients are never stored.

    Public read-only properties:
    - terms -- dict from monomial key to complex coefficient (a copy)
    - free_vars -- frozenset of variable ids that occur
    - is_zero -- bool; whether there are no terms

    Polynomials support `+`, `-`, `*` with each other and with numbers, and
    compare equal iff their coefficients are identical. Use `allclose()` for
    floating-point comparison.
    """

    __slots__ = ('_terms',)

    def __init__(self, terms=None):
        """Build a polynomial from a mapping of monomials to coefficients.

        Arguments:
        - terms (default None) -- mapping whose keys are monomials (mappings
          var -> exponent, or iterables of (var, exponent) pairs) and whose
          values are complex coefficients

        Raises DegreeCapError if any exponent exceeds the degree cap.
        """
        collected = defaultdict(complex)
        for monomial, coefficient in (terms or {}).items():
            collected[_monomial_key(monomial)] += complex(coefficient)
        cap = utils.settings.max_degree()
        for key in collected:
            for var, exponent in key:
                if exponent > cap:
                    raise DegreeCapError(f"Degree {exponent} in z{var} exceeds the cap of {cap}")
        self._terms = {k: c for k, c in collected.items() if c != 0}

    @classmethod
    def const(cls, value):
        return cls({(): value})

    @classmethod
    def var(cls, var, coefficient=1):
        return cls({((var, 1),): coefficient})

    @classmethod
    def monomial(cls, exponents, coefficient=1):
        return cls({_monomial_key(exponents): coefficient})

    @property
    def terms(self):
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self):
        return len(self._terms)

    @property
    def is_zero(self):
        return not self._terms

    @property
    def free_vars(self):
        return frozenset(v for key in self._terms for v, _ in key)

    def degree(self, var):
        """Return the highest exponent of z_var (0 if it does not occur)."""
        return max((dict(key).get(var, 0) for key in self._terms), default=0)

    def degrees(self, variables):
        return tuple(self.degree(v) for v in variables)

    def coefficient(self, monomial):
        return self._terms.get(_monomial_key(monomial), 0j)

    def max_abs_coefficient(self):
        return max((abs(c) for c in self._terms.values()), default=0.0)

    # Ring operations

    def _coerce(self, other):
        if isinstance(other, CPoly):
            return other
        if isinstance(other, numbers.Number):
            return CPoly.const(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        terms = defaultdict(complex, self._terms)
        for key, coefficient in other._terms.items():
            terms[key] += coefficient
        return CPoly(terms)

    __radd__ = __add__

    def __neg__(self):
        return CPoly({k: -c for k, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, numbers.Number):
            return self.scale(other)
        if not isinstance(other, CPoly):
            return NotImplemented
        terms = defaultdict(complex)
        for key1, c1 in self._terms.items():
            for key2, c2 in other._terms.items():
                terms[_monomial_key(key1 + key2)] += c1 * c2
        return CPoly(terms)

    __rmul__ = __mul__

    def __pow__(self, exponent):
        exponent = utils.convert.to_order(exponent)
        result, base = CPoly.const(1), self
        while exponent:
            if exponent & 1:
                result = result * base
            exponent >>= 1
            if exponent:
                base = base * base
        return result

    def scale(self, factor):
        factor = complex(factor)
        return CPoly({k: c * factor for k, c in self._terms.items()})

    def __eq__(self, other):
        if isinstance(other, numbers.Number):
            other = CPoly.const(other)
        if not isinstance(other, CPoly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def allclose(self, other, rtol=1e-12, atol=0.0):
        """Coefficient-wise comparison: every coefficient differs by at most
        `atol + rtol * max(|a|, |b|)`.
        """
        other = self._coerce(other)
        for key in set(self._terms) | set(other._terms):
            a, b = self._terms.get(key, 0j), other._terms.get(key, 0j)
            if abs(a - b) > atol + rtol * max(abs(a), abs(b)):
                return False
        return True

    # Calculus

    def derive(self, var, times=1):
        """Return the `times`-th partial derivative with respect to z_var."""
        var = utils.convert.to_var_id(var)
        times = utils.convert.to_order(times)
        terms = {}
        for key, coefficient in self._terms.items():
            exponents = dict(key)
            k = exponents.get(var, 0)
            if k < times:
                continue
            exponents[var] = k - times
            terms[_monomial_key(exponents)] = coefficient * math.perm(k, times)
        return CPoly(terms)

    def antiderive_from_zero(self, var, times=1):
        """Integrate `times` times with respect to z_var, each time from 0.

        The coefficient of z_var^k becomes the coefficient of
        z_var^(k+times) multiplied by k!/(k+times)!, so `derive(var, times)`
        undoes this exactly.
        """
        var = utils.convert.to_var_id(var)
        times = utils.convert.to_order(times)
        if times < 1:
            raise ValueError(f"Antiderivative count must be at least 1, not {times}")
        terms = {}
        for key, coefficient in self._terms.items():
            exponents = dict(key)
            k = exponents.get(var, 0)
            exponents[var] = k + times
            terms[_monomial_key(exponents)] = coefficient / math.perm(k + times, times)
        return CPoly(terms)

    def affine_substitute(self, var, a, b):
        """Replace z_var by `a * z_var + b` and expand."""
        var = utils.convert.to_var_id(var)
        a, b = complex(a), complex(b)
        if a == 1 and b == 0:
            return self
        terms = defaultdict(complex)
        for key, coefficient in self._terms.items():
            exponents = dict(key)
            k = exponents.pop(var, 0)
            for j in range(k + 1):
                weight = math.comb(k, j) * a ** j * b ** (k - j)
                if weight == 0:
                    continue
                exponents[var] = j
                terms[_monomial_key(exponents)] += coefficient * weight
        return CPoly(terms)

    def restrict(self, var, value):
        """Substitute the constant `value` for z_var."""
        return self.affine_substitute(var, 0, value)

    # Evaluation

    def eval(self, point):
        """Evaluate by recursive multivariate Horner schemes.

        Arguments:
        - point -- mapping from variable (id, `Var` or `'z<id>'`) to a complex
          number or an array; arrays broadcast together

        Returns a Python complex for scalar points, otherwise a complex ndarray.
        Raises EvaluationError if a variable of the polynomial has no value.
        """
        values = {}
        for var, value in point.items():
            if isinstance(var, Var):
                var = var.id
            values[utils.convert.to_var_id(var)] = np.asarray(value, dtype=np.complex128)
        missing = self.free_vars - set(values)
        if missing:
            names = ', '.join(f'z{v}' for v in sorted(missing))
            raise EvaluationError(f"No value given for variable(s) {names}")
        shape = np.broadcast(*values.values()).shape if values else ()
        result = _horner(self._terms, sorted(self.free_vars), values)
        if not shape:
            return complex(result)
        return np.array(np.broadcast_to(result, shape), dtype=np.complex128)

    __call__ = eval

    # Conversion

    @classmethod
    def from_expr(cls, e):
        """Convert an expression to a polynomial exactly.

        Constant subexpressions (including exp/sin/cos of constants) are
        evaluated; division is allowed only by constants and negative powers
        only of constants. Raises NotPolynomialError otherwise.
        """
        return _from_expr(e)

    def to_expr(self):
        """Return an expression tree with the same value."""
        result = ZERO
        for key in sorted(self._terms):
            term = as_expr(self._terms[key])
            for var, exponent in key:
                term = mul(term, power(Var(var), exponent))
            result = add(result, term)
        return result

    def __str__(self):
        if not self._terms:
            return '0'
        parts = []
        for key in sorted(self._terms):
            factors = [f'{self._terms[key]}'] + [
                f'z{v}' if k == 1 else f'z{v}^{k}' for v, k in key
            ]
            parts.append('*'.join(factors))
        return ' + '.join(parts)

    def __repr__(self):
        return f'CPoly({str(self)!r})'


def _horner(terms, variables, values):
    if not variables:
        return np.complex128(terms.get((), 0j))
    var, rest = variables[0], variables[1:]
    groups = defaultdict(dict)
    for key, coefficient in terms.items():
        exponents = dict(key)
        k = exponents.pop(var, 0)
        groups[k][tuple(sorted(exponents.items()))] = coefficient
    x = values[var]
    result = np.complex128(0)
    for k in range(max(groups), -1, -1):
        result = result * x
        if k in groups:
            result = result + _horner(groups[k], rest, values)
    return result


@singledispatch
def _from_expr(e):
    raise NotPolynomialError(f"Cannot convert {type(e).__name__} to a polynomial")


@_from_expr.register
def _(e: Const):
    return CPoly.const(e.value)


@_from_expr.register
def _(e: Var):
    return CPoly.var(e.id)


@_from_expr.register
def _(e: Add):
    return _from_expr(e.left) + _from_expr(e.right)


@_from_expr.register
def _(e: Neg):
    return -_from_expr(e.arg)


@_from_expr.register
def _(e: Mul):
    return _from_expr(e.left) * _from_expr(e.right)


@_from_expr.register
def _(e: Div):
    denominator = _from_expr(e.right)
    if denominator.free_vars:
        raise NotPolynomialError(f"Division by a non-constant in {e}")
    value = denominator.coefficient(())
    if value == 0:
        raise EvaluationError(f"Division by zero in {e}")
    return _from_expr(e.left).scale(1 / value)


@_from_expr.register
def _(e: Pow):
    base = _from_expr(e.base)
    if e.exponent >= 0:
        return base ** e.exponent
    if base.free_vars:
        raise NotPolynomialError(f"Negative power of a non-constant in {e}")
    value = base.coefficient(())
    if value == 0:
        raise EvaluationError(f"Zero raised to a negative power in {e}")
    return CPoly.const(value ** e.exponent)


@_from_expr.register(Exp)
@_from_expr.register(Sin)
@_from_expr.register(Cos)
def _(e):
    if e.free_vars:
        raise NotPolynomialError(f"{type(e).__name__.lower()} of a non-constant in {e}")
    return CPoly.const(evaluate(e, {}))
