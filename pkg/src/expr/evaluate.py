"""Vectorized numeric evaluation of expression trees."""

from functools import singledispatch

import numpy as np

from expr.nodes import Add, Const, Cos, Div, Exp, Mul, Neg, Pow, Sin, Var
import utils.convert


POLE_MODES = ('raise', 'infinity')


class EvaluationError(ArithmeticError):
    """Raised when an expression cannot be evaluated at the requested points:
    a variable has no value, or a denominator vanishes.
    """


def _pole(values, mask, poles, what):
    if poles == 'raise':
        raise EvaluationError(f"{what} at {np.count_nonzero(mask)} evaluation point(s)")
    return np.where(mask, np.complex128(np.inf), values)


@singledispatch
def _evaluate(e, values, poles):
    raise TypeError(f"Cannot evaluate {type(e).__name__}")


@_evaluate.register
def _(e: Const, values, poles):
    return np.complex128(e.value)


@_evaluate.register
def _(e: Var, values, poles):
    try:
        return values[e.id]
    except KeyError:
        raise EvaluationError(f"No value given for variable {e}") from None


@_evaluate.register
def _(e: Add, values, poles):
    return _evaluate(e.left, values, poles) + _evaluate(e.right, values, poles)


@_evaluate.register
def _(e: Neg, values, poles):
    return -_evaluate(e.arg, values, poles)


@_evaluate.register
def _(e: Mul, values, poles):
    return _evaluate(e.left, values, poles) * _evaluate(e.right, values, poles)


@_evaluate.register
def _(e: Div, values, poles):
    numerator = _evaluate(e.left, values, poles)
    denominator = _evaluate(e.right, values, poles)
    zero = denominator == 0
    if np.any(zero):
        quotient = numerator / np.where(zero, 1, denominator)
        return _pole(quotient, zero, poles, f"Division by zero in {e}")
    return numerator / denominator


@_evaluate.register
def _(e: Pow, values, poles):
    base = _evaluate(e.base, values, poles)
    if e.exponent >= 0:
        return base ** e.exponent
    zero = base == 0
    if np.any(zero):
        result = 1 / np.where(zero, 1, base) ** -e.exponent
        return _pole(result, zero, poles, f"Zero raised to a negative power in {e}")
    return 1 / base ** -e.exponent


@_evaluate.register
def _(e: Exp, values, poles):
    return np.exp(_evaluate(e.arg, values, poles))


@_evaluate.register
def _(e: Sin, values, poles):
    return np.sin(_evaluate(e.arg, values, poles))


@_evaluate.register
def _(e: Cos, values, poles):
    return np.cos(_evaluate(e.arg, values, poles))


def evaluate(e, assignment, *, poles='raise'):
    """Evaluate `e` in double-precision complex arithmetic.

    Arguments:
    - e -- expression tree
    - assignment -- mapping from variable (id, `Var`, or `'z<id>'`) to a
      complex number or an array of complex numbers; arrays broadcast together

    Optional keyword arguments:
    - poles (default 'raise') -- 'raise' to raise EvaluationError when a
      denominator vanishes, or 'infinity' to return complex infinity at those
      points (used for sphere-valued evaluation)

    Returns a Python complex when every value in `assignment` is a scalar,
    otherwise a complex ndarray with the broadcast shape.
    """
    if poles not in POLE_MODES:
        raise ValueError(f"Unknown pole mode {poles!r}; expected one of {POLE_MODES}")
    values = {}
    for var, value in assignment.items():
        if isinstance(var, Var):
            var = var.id
        values[utils.convert.to_var_id(var)] = np.asarray(value, dtype=np.complex128)
    shape = np.broadcast(*values.values()).shape if values else ()
    with np.errstate(all='ignore'):
        result = _evaluate(e, values, poles)
    if not shape:
        return complex(result)
    return np.array(np.broadcast_to(result, shape), dtype=np.complex128)
