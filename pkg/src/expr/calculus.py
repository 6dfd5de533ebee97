"""Symbolic differentiation and substitution on expression trees."""

from functools import singledispatch

from expr.nodes import (
    Add, Const, Cos, Div, Exp, Mul, Neg, Pow, Sin, Var,
    ONE, ZERO, add, apply_function, as_expr, div, mul, neg, power, sub,
)
from expr.orders import MultiOrder


@singledispatch
def derive_once(e, var):
    """Return d e / d z_var, built with the folding constructors."""
    raise TypeError(f"Cannot differentiate {type(e).__name__}")


@derive_once.register
def _(e: Const, var):
    return ZERO


@derive_once.register
def _(e: Var, var):
    return ONE if e.id == var else ZERO


@derive_once.register
def _(e: Add, var):
    return add(differentiate_var(e.left, var), differentiate_var(e.right, var))


@derive_once.register
def _(e: Neg, var):
    return neg(differentiate_var(e.arg, var))


@derive_once.register
def _(e: Mul, var):
    return add(
        mul(differentiate_var(e.left, var), e.right),
        mul(e.left, differentiate_var(e.right, var)),
    )


@derive_once.register
def _(e: Div, var):
    numerator = sub(
        mul(differentiate_var(e.left, var), e.right),
        mul(e.left, differentiate_var(e.right, var)),
    )
    return div(numerator, power(e.right, 2))


@derive_once.register
def _(e: Pow, var):
    k = e.exponent
    return mul(mul(Const(k), power(e.base, k - 1)), differentiate_var(e.base, var))


@derive_once.register
def _(e: Exp, var):
    return mul(e, differentiate_var(e.arg, var))


@derive_once.register
def _(e: Sin, var):
    return mul(apply_function('cos', e.arg), differentiate_var(e.arg, var))


@derive_once.register
def _(e: Cos, var):
    return mul(neg(apply_function('sin', e.arg)), differentiate_var(e.arg, var))


def differentiate_var(e, var, times=1):
    """Differentiate `e` with respect to z_var `times` times."""
    for _ in range(times):
        if var not in e.free_vars:
            return ZERO
        e = derive_once(e, var)
    return e


def differentiate(e, order):
    """Return the exact mixed partial derivative of `e` of the given order.

    Arguments:
    - e -- expression tree
    - order -- MultiOrder or anything convertible to one (dict var -> order)

    Variables are processed in increasing id order; mixed partials of the
    expressions in this grammar commute, so the order is immaterial to the
    value.
    """
    order = order if isinstance(order, MultiOrder) else MultiOrder(order)
    for var, times in order.items():
        e = differentiate_var(e, var, times)
    return e


@singledispatch
def _substitute(e, mapping):
    raise TypeError(f"Cannot substitute into {type(e).__name__}")


@_substitute.register
def _(e: Const, mapping):
    return e


@_substitute.register
def _(e: Var, mapping):
    return mapping.get(e.id, e)


@_substitute.register(Add)
@_substitute.register(Mul)
@_substitute.register(Div)
def _(e, mapping):
    build = {Add: add, Mul: mul, Div: div}[type(e)]
    return build(_substitute_into(e.left, mapping), _substitute_into(e.right, mapping))


@_substitute.register
def _(e: Neg, mapping):
    return neg(_substitute_into(e.arg, mapping))


@_substitute.register
def _(e: Pow, mapping):
    return power(_substitute_into(e.base, mapping), e.exponent)


@_substitute.register(Exp)
@_substitute.register(Sin)
@_substitute.register(Cos)
def _(e, mapping):
    name = type(e).__name__.lower()
    return apply_function(name, _substitute_into(e.arg, mapping))


def _substitute_into(e, mapping):
    # Subtrees that mention none of the substituted vars are kept as-is.
    if e.free_vars.isdisjoint(mapping):
        return e
    return _substitute(e, mapping)


def restrict(e, var, value):
    """Substitute the constant `value` for z_var and fold what becomes
    constant.

    Expressions that do not mention z_var are returned unchanged.
    """
    if isinstance(var, Var):
        var = var.id
    return _substitute_into(e, {var: as_expr(value)})


def substitute(e, mapping):
    """Simultaneously substitute expressions (or numbers) for variables.

    Arguments:
    - e -- expression tree
    - mapping -- dict from variable id to expression or number
    """
    return _substitute_into(e, {var: as_expr(value) for var, value in mapping.items()})
