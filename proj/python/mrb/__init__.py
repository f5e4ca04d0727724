"""Python wrapper over the native bound computations.

Native functions return JSON text; these wrappers decode it into dicts.
"""

import json

from . import _mrb
from ._mrb import Error, IngestError, UnsupportedError, ValidationError

__all__ = [
    "Error",
    "IngestError",
    "UnsupportedError",
    "ValidationError",
    "amiv",
    "binary_iv",
    "intersect_bounds",
    "intervals_lattice",
    "run",
]


def intersect_bounds(weights, lower, upper):
    return json.loads(_mrb.intersect_bounds(list(weights), list(lower), list(upper)))


def binary_iv(z0, z1):
    """Cells ordered (q11, q01, q10, q00) for each instrument value."""
    return json.loads(_mrb.binary_iv(list(z0), list(z1)))


def amiv(weights, q_lower, q_upper, y_lower=(0.0, 0.0), y_upper=(1.0, 1.0), per_outcome=False):
    """q_lower / q_upper are pairs indexed by treatment d = 0, 1."""
    return json.loads(
        _mrb.amiv(list(weights), [list(v) for v in q_lower], [list(v) for v in q_upper],
                  list(y_lower), list(y_upper), per_outcome))


def intervals_lattice(atoms):
    """atoms: mapping from assumption id to a closed interval (lo, hi)."""
    ids = list(atoms)
    return json.loads(_mrb.intervals_lattice(ids, [tuple(atoms[i]) for i in ids]))


def run(command, path, **kwargs):
    """Build a report for a fixture file. Returns (report dict, markdown text, exit code)."""
    fn = {
        "intersect": _mrb.run_intersect,
        "binary-iv": _mrb.run_binary_iv,
        "amiv": _mrb.run_amiv,
        "lattice": _mrb.run_lattice,
        "artstein": _mrb.run_artstein,
    }[command]
    text, markdown, code = fn(str(path), **kwargs)
    return json.loads(text), markdown, code
