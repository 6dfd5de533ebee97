from collections.abc import Mapping
import itertools

import utils.convert


class MultiOrder(Mapping):
    """An immutable, finitely supported map from variable id to derivative
    order.

    Zero orders are never stored, so `MultiOrder({1: 0})` equals
    `MultiOrder()`; `order[v]` raises KeyError for unsupported vars and
    `order.get(v, 0)` is the usual way to read one. MultiOrders are hashable
    and compare equal to each other by content.

    Public read-only properties:
    - total -- integer; sum of all orders
    - support -- frozenset of variable ids with nonzero order
    """

    __slots__ = ('_items',)

    def __init__(self, orders=None, **kwargs):
        items = dict(orders or {})
        items.update(kwargs)
        clean = {}
        for var, order in items.items():
            var = utils.convert.to_var_id(var)
            order = utils.convert.to_order(order)
            if order:
                clean[var] = clean.get(var, 0) + order
        self._items = tuple(sorted(clean.items()))

    @classmethod
    def box(cls, variables, n):
        """Iterate over every MultiOrder with `0 <= order[v] <= n` for each v in
        `variables`, in lexicographic order of the order tuples.
        """
        variables = list(variables)
        for orders in itertools.product(range(n + 1), repeat=len(variables)):
            yield cls(zip(variables, orders))

    def __getitem__(self, var):
        for v, order in self._items:
            if v == var:
                return order
        raise KeyError(var)

    def __iter__(self):
        return (v for v, _ in self._items)

    def __len__(self):
        return len(self._items)

    def __hash__(self):
        return hash(self._items)

    def __eq__(self, other):
        if isinstance(other, MultiOrder):
            return self._items == other._items
        if isinstance(other, Mapping):
            return self == MultiOrder(other)
        return NotImplemented

    def __add__(self, other):
        combined = dict(self._items)
        for var, order in MultiOrder(other).items():
            combined[var] = combined.get(var, 0) + order
        return MultiOrder(combined)

    def __lt__(self, other):
        return self._items < MultiOrder(other)._items

    @property
    def total(self):
        return sum(order for _, order in self._items)

    @property
    def support(self):
        return frozenset(self)

    def as_tuple(self, variables):
        """Return the orders of `variables`, in that order, as a tuple."""
        return tuple(self.get(v, 0) for v in variables)

    def label(self, variables=None):
        """Return a compact text label: `a(1,0,2)` for the given `variables`,
        or `z1:1,z3:2` when no variable order is given.
        """
        if variables is not None:
            return 'a(' + ','.join(map(str, self.as_tuple(variables))) + ')'
        return ','.join(f'z{v}:{order}' for v, order in self._items) or '0'

    def __repr__(self):
        return f'MultiOrder({dict(self._items)})'
