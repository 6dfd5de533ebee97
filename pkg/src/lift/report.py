from dataclasses import dataclass, field
import json
import math


@dataclass(frozen=True)
class BudgetEntry:
    """One backend call of the lift recursion.

    Fields:
    - path -- tuple of step labels from the root, e.g. `('Q',)` or
      `('{z1:0}', 'Q')`
    - variables -- tuple of variable ids the fit ran on
    - allocated -- share of the (normalized) error budget
    - achieved -- empirical sup error of the fit, or inf if every attempt
      failed
    - method -- backend method tag ('taylor', 'lsq') or None
    - degrees -- per-variable degrees of the fit
    """

    path: tuple
    variables: tuple
    allocated: float
    achieved: float
    method: str = None
    degrees: tuple = ()

    @property
    def met(self):
        return self.achieved <= self.allocated

    def to_dict(self):
        return {
            'path': '/'.join(self.path),
            'variables': [f'z{v}' for v in self.variables],
            'allocated': self.allocated,
            'achieved': _finite(self.achieved),
            'method': self.method,
            'degrees': list(self.degrees),
            'met': self.met,
        }


def _finite(value):
    # JSON has no infinity; unreachable errors are written as null.
    return value if value is not None and math.isfinite(value) else None


@dataclass(frozen=True)
class ApproxReport:
    """Result of lifting a sup-norm approximant to one for all mixed
    derivatives.

    Fields:
    - poly -- final CPoly P, in original coordinates
    - variables -- product variables, in product order
    - n -- maximal derivative order per variable
    - epsilon -- requested total error
    - errors -- dict from MultiOrder alpha to the empirical sup error of
      `d^alpha P - d^alpha f` in original coordinates, for every alpha in
      the box [0, n]^m
    - ledger -- tuple of BudgetEntry, in recursion order
    - depths -- tuple giving the number of recursion nodes at each depth
    - q_error -- error of the top-level approximant Q (normalized
      coordinates), or None when there is no top-level Q
    - block_errors -- dict from MultiOrder alpha to the empirical sup error of
      the top-level `d^alpha (A - B)` in normalized coordinates
    - scales, shifts -- normalization applied to each factor
    - probe -- max deviation found by the T-identity probe, or None
    """

    poly: object
    variables: tuple
    n: int
    epsilon: float
    errors: dict
    ledger: tuple
    depths: tuple
    q_error: float = None
    block_errors: dict = field(default_factory=dict)
    scales: tuple = ()
    shifts: tuple = ()
    probe: float = None

    @property
    def success(self):
        """Whether every backend call reached its allocated share."""
        return all(entry.met for entry in self.ledger)

    @property
    def max_error(self):
        return max(self.errors.values(), default=0.0)

    @property
    def allocated_total(self):
        return sum(entry.allocated for entry in self.ledger)

    def to_dict(self):
        label = lambda alpha: alpha.label(self.variables)
        ordered = lambda errors: sorted(errors.items(), key=lambda item: item[0].as_tuple(self.variables))
        return {
            'variables': [f'z{v}' for v in self.variables],
            'n': self.n,
            'epsilon': self.epsilon,
            'success': self.success,
            'error_kind': 'empirical sup on validation grid',
            'max_error': _finite(self.max_error),
            'errors': [{'order': label(a), 'error': _finite(e)} for a, e in ordered(self.errors)],
            'q_error': _finite(self.q_error),
            'block_errors': [{'order': label(a), 'error': _finite(e)} for a, e in ordered(self.block_errors)],
            'ledger': [entry.to_dict() for entry in self.ledger],
            'recursion': {'nodes': sum(self.depths), 'depth': len(self.depths) - 1, 'per_depth': list(self.depths)},
            'normalization': [
                {'variable': f'z{v}', 'scale': s, 'shift': [t.real, t.imag]}
                for v, s, t in zip(self.variables, self.scales, self.shifts)
            ],
            'probe_deviation': _finite(self.probe),
        }

    def to_json(self):
        return json.dumps(self.to_dict(), indent=1, sort_keys=True)
