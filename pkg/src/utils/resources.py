"""Locate files shipped next to the code, in a checkout or in a one-file
build."""

import os
import sys

# Repository root of a source checkout: src/utils/ is two levels down.
CHECKOUT_ROOT = os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__))))


def get(relative_path):
    """Get a file resource, even when bundled into a single executable."""
    base_path = getattr(sys, '_MEIPASS', CHECKOUT_ROOT)
    return os.path.join(base_path, relative_path)


def read_text(relative_path, default=None):
    """Return the stripped text of a resource.

    If the file is missing, return `default`, or re-raise when no default is
    given.
    """
    try:
        with open(get(relative_path)) as f:
            return f.read().strip()
    except OSError:
        if default is None:
            raise
        return default
