"""Immutable expression trees over indexed complex variables `z<id>`.

Node classes are frozen dataclasses, so two trees compare equal iff they are
structurally identical. The lower-case constructors at the bottom of this
module (`add`, `mul`, ...) fold constant subtrees and the trivial 0/1
identities; the parser never uses them, so parsed trees keep the shape of the
source text.
"""

from dataclasses import dataclass
from functools import cached_property
import cmath
import math


class Expr:
    """Base class for expression nodes.

    Public read-only properties:
    - free_vars -- frozenset of integer variable ids referenced by the tree
    - is_const -- bool; whether the node is a literal

    `str()` gives the fully parenthesized text form, which `expr.parser.parse`
    reads back into an equal tree.
    """

    is_const = False

    def __add__(self, other):
        return add(self, as_expr(other))

    def __radd__(self, other):
        return add(as_expr(other), self)

    def __sub__(self, other):
        return add(self, neg(as_expr(other)))

    def __rsub__(self, other):
        return add(as_expr(other), neg(self))

    def __mul__(self, other):
        return mul(self, as_expr(other))

    def __rmul__(self, other):
        return mul(as_expr(other), self)

    def __truediv__(self, other):
        return div(self, as_expr(other))

    def __rtruediv__(self, other):
        return div(as_expr(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, exponent):
        return power(self, exponent)


def _format_real(x):
    # Adding 0.0 turns -0.0 into 0.0.
    return repr(float(x) + 0.0)


def _is_negative(x):
    return math.copysign(1.0, x) < 0 and x != 0


@dataclass(frozen=True, eq=True)
class Const(Expr):
    value: complex

    is_const = True

    def __post_init__(self):
        object.__setattr__(self, 'value', complex(self.value))

    @cached_property
    def free_vars(self):
        return frozenset()

    @property
    def is_bare(self):
        """Whether the printed form is a single unsigned literal token."""
        re, im = self.value.real, self.value.imag
        if im == 0:
            return not _is_negative(re)
        return re == 0 and not _is_negative(im)

    def __str__(self):
        re, im = self.value.real, self.value.imag
        if im == 0:
            text = _format_real(re)
            return f'({text})' if _is_negative(re) else text
        if re == 0:
            text = _format_real(im) + 'i'
            return f'({text})' if _is_negative(im) else text
        sign = '-' if _is_negative(im) else '+'
        return f'({_format_real(re)}{sign}{_format_real(abs(im))}i)'


@dataclass(frozen=True, eq=True)
class Var(Expr):
    id: int

    def __post_init__(self):
        if not isinstance(self.id, int) or isinstance(self.id, bool) or self.id < 0:
            raise ValueError(f"Variable id must be a non-negative integer, not {self.id!r}")

    @cached_property
    def free_vars(self):
        return frozenset((self.id,))

    def __str__(self):
        return f'z{self.id}'


@dataclass(frozen=True, eq=True)
class Add(Expr):
    left: Expr
    right: Expr

    @cached_property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars

    def __str__(self):
        left = str(self.left)
        # A bare real literal followed by `+ <bare imaginary literal>` would be
        # read back as one complex literal.
        if isinstance(self.left, Const) and self.left.is_bare and self.left.value.imag == 0 \
                and isinstance(self.right, Const) and self.right.is_bare and self.right.value.real == 0:
            left = f'({left})'
        return f'({left} + {self.right})'


@dataclass(frozen=True, eq=True)
class Neg(Expr):
    arg: Expr

    @cached_property
    def free_vars(self):
        return self.arg.free_vars

    def __str__(self):
        arg = str(self.arg)
        # `-<literal>` is read back as a negative literal.
        if isinstance(self.arg, Const) and self.arg.is_bare:
            arg = f'({arg})'
        return f'(-{arg})'


@dataclass(frozen=True, eq=True)
class Mul(Expr):
    left: Expr
    right: Expr

    @cached_property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars

    def __str__(self):
        return f'({self.left} * {self.right})'


@dataclass(frozen=True, eq=True)
class Div(Expr):
    left: Expr
    right: Expr

    @cached_property
    def free_vars(self):
        return self.left.free_vars | self.right.free_vars

    def __str__(self):
        return f'({self.left} / {self.right})'


@dataclass(frozen=True, eq=True)
class Pow(Expr):
    base: Expr
    exponent: int

    def __post_init__(self):
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool):
            raise TypeError(f"Power exponent must be an integer, not {self.exponent!r}")

    @cached_property
    def free_vars(self):
        return self.base.free_vars

    def __str__(self):
        return f'({self.base}^{self.exponent})'


@dataclass(frozen=True, eq=True)
class Exp(Expr):
    arg: Expr

    @cached_property
    def free_vars(self):
        return self.arg.free_vars

    def __str__(self):
        return f'exp({self.arg})'


@dataclass(frozen=True, eq=True)
class Sin(Expr):
    arg: Expr

    @cached_property
    def free_vars(self):
        return self.arg.free_vars

    def __str__(self):
        return f'sin({self.arg})'


@dataclass(frozen=True, eq=True)
class Cos(Expr):
    arg: Expr

    @cached_property
    def free_vars(self):
        return self.arg.free_vars

    def __str__(self):
        return f'cos({self.arg})'


FUNCTIONS = {
    'exp': Exp,
    'sin': Sin,
    'cos': Cos,
}

ZERO = Const(0)
ONE = Const(1)


def as_expr(value):
    """Wrap numbers as `Const`; pass expressions through unchanged."""
    if isinstance(value, Expr):
        return value
    return Const(complex(value))


def _is_value(e, value):
    return isinstance(e, Const) and e.value == value


def add(left, right):
    if _is_value(left, 0):
        return right
    if _is_value(right, 0):
        return left
    if left.is_const and right.is_const:
        return Const(left.value + right.value)
    return Add(left, right)


def neg(arg):
    if arg.is_const:
        return Const(-arg.value)
    return Neg(arg)


def sub(left, right):
    return add(left, neg(right))


def mul(left, right):
    if _is_value(left, 0) or _is_value(right, 0):
        return ZERO
    if _is_value(left, 1):
        return right
    if _is_value(right, 1):
        return left
    if left.is_const and right.is_const:
        return Const(left.value * right.value)
    return Mul(left, right)


def div(left, right):
    if _is_value(right, 1):
        return left
    if right.is_const and right.value != 0:
        if left.is_const:
            return Const(left.value / right.value)
    elif _is_value(left, 0):
        return ZERO
    return Div(left, right)


def power(base, exponent):
    exponent = int(exponent)
    if exponent == 0:
        return ONE
    if exponent == 1:
        return base
    if base.is_const and (exponent > 0 or base.value != 0):
        return Const(base.value ** exponent)
    return Pow(base, exponent)


def apply_function(name, arg):
    """Apply `exp`, `sin` or `cos` by name, folding constant arguments."""
    if arg.is_const:
        return Const(getattr(cmath, name)(arg.value))
    return FUNCTIONS[name](arg)
