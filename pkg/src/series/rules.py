"""Per-term bound sequences `b_n` for series of single-variable terms.

A bound rule is called with an index n >= 1 and returns `b_n >= 0` bounding
`|f_n|` on the closed unit polydisc. `tail(k, horizon)` bounds
`sum_{k < n <= horizon} b_n`; with `horizon=None` the sum is infinite and
only rules with a closed-form tail can answer.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
import math


class InsufficientBoundsError(ValueError):
    """Raised when the bounds cannot certify any finite variable set."""


class BoundRule(ABC):
    @abstractmethod
    def __call__(self, n):
        pass

    def closed_tail(self, k):
        """Bound of the infinite tail after k, or None if there is no closed
        form."""
        return None

    def tail(self, k, horizon=None):
        if horizon is not None:
            return math.fsum(self(n) for n in range(k + 1, horizon + 1))
        tail = self.closed_tail(k)
        if tail is None:
            raise InsufficientBoundsError(f"{self} has no closed-form tail; give the series a horizon")
        return tail


@dataclass(frozen=True)
class PSeries(BoundRule):
    """`b_n = scale / n^p`; the infinite tail is finite for p > 1."""

    p: float
    scale: float = 1.0

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError(f"Bound scale must be non-negative, not {self.scale}")

    def __call__(self, n):
        return self.scale / n ** self.p

    def closed_tail(self, k):
        if self.p <= 1:
            return math.inf
        if k == 0:
            return self(1) + self.closed_tail(1)
        # Integral comparison: sum_{n>k} n^-p <= int_k^inf x^-p dx.
        return self.scale * k ** (1 - self.p) / (self.p - 1)

    def __str__(self):
        return f'pseries {self.p:g}' + (f' {self.scale:g}' if self.scale != 1 else '')


@dataclass(frozen=True)
class Geometric(BoundRule):
    """`b_n = scale * ratio^n` for 0 <= ratio < 1."""

    ratio: float
    scale: float = 1.0

    def __post_init__(self):
        if not 0 <= self.ratio < 1:
            raise ValueError(f"Geometric ratio must be in [0, 1), not {self.ratio}")
        if self.scale < 0:
            raise ValueError(f"Bound scale must be non-negative, not {self.scale}")

    def __call__(self, n):
        return self.scale * self.ratio ** n

    def closed_tail(self, k):
        return self.scale * self.ratio ** (k + 1) / (1 - self.ratio)

    def __str__(self):
        return f'geometric {self.ratio:g}' + (f' {self.scale:g}' if self.scale != 1 else '')


class RuleBound(BoundRule):
    """A bound given by an arbitrary callable, e.g. a Lua function from a run
    config. Tails are summed term by term, so a horizon is required."""

    def __init__(self, function, name='rule'):
        self._function = function
        self._name = name

    def __call__(self, n):
        value = float(self._function(n))
        if not value >= 0:
            raise InsufficientBoundsError(f"Bound rule {self._name} gave {value} at n={n}")
        return value

    def __str__(self):
        return self._name


BOUND_CATALOG = {
    'pseries': PSeries,
    'geometric': Geometric,
}


def parse_bound(text):
    """Parse a catalog bound such as `pseries 2` or `geometric 0.5 3`."""
    words = text.split()
    if not words or words[0] not in BOUND_CATALOG:
        raise ValueError(f"Unknown bound rule {text!r}; expected one of {sorted(BOUND_CATALOG)}")
    try:
        arguments = [float(w) for w in words[1:]]
        return BOUND_CATALOG[words[0]](*arguments)
    except TypeError as e:
        raise ValueError(f"Wrong number of arguments in bound rule {text!r}") from e
