"""The domain config text format.

One factor per line:

    z1 disc 0 0 0.5
    z2 rect 0 0 1 1
    z3 mobius 1 0.5 0 2
    z4 sinecomb
    z5 annulus 0 0 0.3 1
    default disc 0 0 0.5

Variables may be written `z1` or `1`. Mobius coefficients use the expression
literal syntax without spaces (`1+2i`). A `default` line supplies the factor
for every requested variable that has no line of its own. Blank lines and
text after `#` are ignored.
"""

from expr.parser import parse
from geometry.planar import Annulus, Disc, MobiusDisc, Rect, SineComb
from geometry.product import ProductDomain
import utils.convert


def _real(text):
    return float(text)


def _complex(text):
    node = parse(text)
    if not node.is_const:
        raise ValueError(f"{text!r} is not a complex literal")
    return node.value


SHAPES = {
    'disc': (3, lambda x, y, r: Disc(complex(_real(x), _real(y)), _real(r))),
    'rect': (4, lambda x0, y0, x1, y1: Rect(*map(_real, (x0, y0, x1, y1)))),
    'mobius': (4, lambda a, b, c, d: MobiusDisc(*map(_complex, (a, b, c, d)))),
    'sinecomb': (0, lambda: SineComb()),
    'annulus': (4, lambda x, y, r0, r1: Annulus(complex(_real(x), _real(y)), _real(r0), _real(r1))),
}


def parse_shape(words):
    """Build a PlanarDomain from a shape name and its arguments."""
    if not words:
        raise ValueError("Missing domain shape")
    name, args = words[0].lower(), words[1:]
    if name not in SHAPES:
        raise ValueError(f"Unknown domain shape {name!r}; expected one of {sorted(SHAPES)}")
    arity, build = SHAPES[name]
    if len(args) != arity:
        raise ValueError(f"Shape {name!r} takes {arity} argument(s), got {len(args)}")
    return build(*args)


def parse_domain(text, variables=None, resolution=None):
    """Parse domain config text into a ProductDomain.

    Arguments:
    - text -- domain config text

    Optional arguments:
    - variables (default None) -- variable ids that must all get a factor;
      missing ones take the `default` shape. Variables listed in the text are
      always kept.
    - resolution (default None) -- grid spacing stored in the product

    Raises ValueError with the offending line number on malformed input.
    """
    factors = {}
    default = None
    for number, line in enumerate(text.splitlines(), 1):
        words = line.split('#', 1)[0].split()
        if not words:
            continue
        try:
            if words[0].lower() == 'default':
                default = parse_shape(words[1:])
                continue
            var = utils.convert.to_var_id(words[0])
            if var in factors:
                raise ValueError(f"z{var} is given twice")
            factors[var] = parse_shape(words[1:])
        except ValueError as e:
            raise ValueError(f"Domain line {number}: {e}") from e
    if variables is not None:
        for var in variables:
            if var not in factors:
                if default is None:
                    raise ValueError(f"No domain given for z{var} and no default")
                factors[var] = default
    kwargs = {} if resolution is None else {'resolution': resolution}
    return ProductDomain(tuple(sorted(factors.items())), **kwargs)


def format_domain(pd):
    """Inverse of parse_domain for catalog factors."""
    return '\n'.join(f'z{var} {domain.to_config()}' for var, domain in pd.factors)
