"""Recursive-descent parser for the expression text format.

Grammar (whitespace is ignored between tokens):

    expression := term (('+' | '-') term)*
    term       := unary (('*' | '/') unary)*
    unary      := '-' unary | power
    power      := atom ('^' ['-'] INTEGER)?
    atom       := NUMBER | 'z'INTEGER | FUNCTION '(' expression ')'
                | '(' expression ')'

NUMBER is an unsigned decimal, optionally suffixed by `i`. A minus sign applied
directly to a literal that is not raised to a power becomes part of the
literal, and a literal pair `a+bi` / `a-bi` at the start of an expression is
read as one complex literal. Nothing else is folded.
"""

import re

from expr.nodes import Add, Const, FUNCTIONS, Mul, Div, Neg, Pow, Var


class ExprSyntaxError(ValueError):
    """Raised when expression text does not follow the grammar.

    Public read-only properties:
    - text -- the full source text
    - position -- integer; offset of the offending token
    """

    def __init__(self, message, text, position):
        super().__init__(f"{message} at position {position}")
        self.text = text
        self.position = position


class UnknownIdentifierError(ExprSyntaxError):
    """Raised for identifiers that are neither variables nor functions."""

    def __init__(self, name, text, position):
        super().__init__(f"unknown identifier {name!r}", text, position)
        self.name = name


TOKEN_PATTERN = re.compile(r'''
    (?P<space>\s+)
  | (?P<number>(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?i?)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^()])
''', re.VERBOSE)

VAR_PATTERN = re.compile(r'z(\d+)')


def tokenize(text):
    """Split `text` into `(kind, value, position)` tuples, ending with an
    `('end', None, len(text))` token.
    """
    tokens = []
    position = 0
    while position < len(text):
        match = TOKEN_PATTERN.match(text, position)
        if match is None:
            raise ExprSyntaxError(f"unexpected character {text[position]!r}", text, position)
        kind = match.lastgroup
        if kind != 'space':
            tokens.append((kind, match.group(), position))
        position = match.end()
    tokens.append(('end', None, len(text)))
    return tokens


class Parser:

    def __init__(self, text):
        self.text = text
        self.tokens = tokenize(text)
        self.index = 0

    @property
    def token(self):
        return self.tokens[self.index]

    def peek(self, offset=1):
        return self.tokens[min(self.index + offset, len(self.tokens) - 1)]

    def advance(self):
        token = self.tokens[self.index]
        self.index += 1
        return token

    def error(self, message=None, token=None):
        kind, value, position = token or self.token
        if message is None:
            message = "unexpected end of input" if kind == 'end' else f"unexpected {value!r}"
        return ExprSyntaxError(message, self.text, position)

    def expect(self, value):
        if self.token[1] != value:
            raise self.error(f"expected {value!r}")
        return self.advance()

    def parse(self):
        node = self._expression()
        if self.token[0] != 'end':
            raise self.error()
        return node

    def _expression(self):
        left, kind = self._term()
        first = True
        while self.token[1] in ('+', '-'):
            op = self.advance()[1]
            right, right_kind = self._term()
            if first and kind == 'real' and right_kind == 'imag':
                value = left.value + right.value if op == '+' else left.value - right.value
                left = Const(value)
            else:
                left = Add(left, right if op == '+' else Neg(right))
            first = False
        return left

    def _term(self):
        # The second value is 'real' or 'imag' iff the term is a single
        # (possibly negated) literal token.
        left, kind = self._unary()
        while self.token[1] in ('*', '/'):
            op = self.advance()[1]
            right, _ = self._unary()
            left = Mul(left, right) if op == '*' else Div(left, right)
            kind = None
        return left, kind

    def _unary(self):
        if self.token[1] == '-':
            if self.peek()[0] == 'number' and self.peek(2)[1] != '^':
                self.advance()
                const, kind = self._literal(self.advance())
                return Const(-const.value), kind
            self.advance()
            node, _ = self._unary()
            return Neg(node), None
        return self._power()

    def _power(self):
        if self.token[0] == 'number' and self.peek()[1] != '^':
            return self._literal(self.advance())
        base = self._atom()
        if self.token[1] == '^':
            self.advance()
            sign = 1
            if self.token[1] == '-':
                self.advance()
                sign = -1
            kind, value, _ = self.token
            if kind != 'number' or not value.isdigit():
                raise self.error("expected an integer exponent")
            self.advance()
            base = Pow(base, sign * int(value))
            if self.token[1] == '^':
                raise self.error("chained powers need parentheses")
        return base, None

    def _literal(self, token):
        _, value, position = token
        if value.endswith('i'):
            return Const(complex(0, float(value[:-1]))), 'imag'
        return Const(float(value)), 'real'

    def _atom(self):
        kind, value, position = self.token
        if kind == 'number':
            self.advance()
            return self._literal((kind, value, position))[0]
        if kind == 'name':
            self.advance()
            match = VAR_PATTERN.fullmatch(value)
            if match:
                return Var(int(match.group(1)))
            if value in FUNCTIONS:
                self.expect('(')
                arg = self._expression()
                self.expect(')')
                return FUNCTIONS[value](arg)
            raise UnknownIdentifierError(value, self.text, position)
        if value == '(':
            self.advance()
            node = self._expression()
            self.expect(')')
            return node
        raise self.error()


def parse(text):
    """Parse expression text into a tree.

    Raises ExprSyntaxError (or its subclass UnknownIdentifierError) with the
    offending position.
    """
    if not isinstance(text, str):
        raise TypeError(f"Expected expression text, not {type(text).__name__}")
    return Parser(text).parse()
