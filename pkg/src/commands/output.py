"""Output files. Everything is written with sorted keys and fixed float
formatting so that identical runs produce byte-identical files."""

import csv
import json
import os

import poly.records


def _path(out, name):
    os.makedirs(out, exist_ok=True)
    return os.path.join(out, name)


def write_json(out, name, data):
    path = _path(out, name)
    with open(path, 'w') as f:
        json.dump(data, f, indent=1, sort_keys=True)
        f.write('\n')
    return path


def write_text(out, name, text):
    path = _path(out, name)
    with open(path, 'w') as f:
        f.write(text if text.endswith('\n') else text + '\n')
    return path


def write_poly(out, name, p):
    return write_text(out, name, poly.records.dumps(p))


def _cell(value):
    if isinstance(value, float):
        return repr(value)
    return '' if value is None else str(value)


def write_csv(out, name, columns, rows):
    """Write dict rows with the given column order."""
    path = _path(out, name)
    with open(path, 'w', newline='') as f:
        writer = csv.writer(f, lineterminator='\n')
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row.get(column)) for column in columns])
    return path
