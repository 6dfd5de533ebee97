"""The polynomial file format.

A polynomial file is a JSON list of term records

    {"vars": [[id, exponent], ...], "re": <float>, "im": <float>}

sorted lexicographically by `vars`. Floats are written with Python's shortest
round-tripping repr, so loading a written file reproduces every binary64
coefficient exactly.
"""

import json

from poly.cpoly import CPoly


def to_records(p):
    """Return the list of term records of `p` in file order."""
    return [
        {
            'vars': [[var, exponent] for var, exponent in key],
            're': coefficient.real,
            'im': coefficient.imag,
        }
        for key, coefficient in sorted(p.items())
    ]


def from_records(records):
    """Build a CPoly from term records; raises ValueError on malformed input."""
    terms = {}
    try:
        for record in records:
            key = tuple((int(var), int(exponent)) for var, exponent in record['vars'])
            terms[key] = terms.get(key, 0j) + complex(float(record['re']), float(record['im']))
    except (KeyError, TypeError, ValueError) as e:
        raise ValueError(f"Malformed polynomial record: {e}") from e
    return CPoly(terms)


def dumps(p):
    return json.dumps(to_records(p), indent=1)


def loads(text):
    return from_records(json.loads(text))


def dump(p, path):
    with open(path, 'w') as f:
        f.write(dumps(p))
        f.write('\n')


def load(path):
    with open(path) as f:
        return loads(f.read())
