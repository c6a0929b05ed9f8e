"""Dieudonne modules, Newton polygons and the isogeny cutoff.

Modules, polygons and reports are plain dicts in the same JSON schemas the
``dvg`` command line tool reads and writes.
"""

import json
from math import gcd

from . import _core
from ._core import DvgError

__all__ = [
    "DvgError",
    "a_number",
    "bounds",
    "bounds_table",
    "cli",
    "compare",
    "dual",
    "enumerate_polygons",
    "minimal",
    "newton_polygon",
    "polygon_string",
    "qx",
    "verify",
    "witness",
]


def _dump(obj):
    return obj if isinstance(obj, str) else json.dumps(obj)


def newton_polygon(module):
    return json.loads(_core.np_of_module(_dump(module)))


def polygon_string(polygon):
    return _core.polygon_string(_dump(polygon))


def a_number(module):
    return _core.a_number(_dump(module))


def qx(module, budget=64, seed=0):
    """QxData for the first cyclic vector found, or None when the budget runs out."""
    out = _core.qx(_dump(module), budget, seed)
    return None if out is None else json.loads(out)


def dual(module):
    return json.loads(_core.dual(_dump(module)))


def minimal(polygon=None, blocks=None, p=2, deg=1, precision=None):
    """Minimal module of a polygon dict, or of a list of (c_i, d_i) blocks."""
    if (polygon is None) == (blocks is None):
        raise ValueError("pass exactly one of polygon or blocks")
    if blocks is not None:
        segments = {}
        for c, d in blocks:
            g = gcd(c, d)
            r = c + d
            key = (d // g, r // g)
            segments[key] = segments.get(key, 0) + r
        ordered = sorted(segments.items(), key=lambda kv: kv[0][0] / kv[0][1])
        polygon = {"segments": [{"slope": f"{n}/{m}", "mult": mult} for (n, m), mult in ordered]}
    return json.loads(_core.minimal(_dump(polygon), p, deg, precision))


def witness(c, d, p=2, deg=1, trials=0, seed=0, precision=None):
    return json.loads(_core.witness(c, d, p, deg, trials, seed, precision))


def verify(module, level, trials, seed, inject=None, threads=1):
    return json.loads(_core.verify(_dump(module), level, trials, seed, "" if inject is None else _dump(inject), threads))


def enumerate_polygons(c, d):
    return json.loads(_core.enumerate(c, d))


def compare(a, b):
    return _core.compare(_dump(a), _dump(b))


def bounds(c, d):
    return json.loads(_core.bounds(c, d))


def bounds_table(c_max, d_max):
    return json.loads(_core.bounds_table(c_max, d_max))["rows"]


def cli(args, input=""):
    """Runs the command line tool in-process; returns (exit_code, stdout, stderr)."""
    return _core.cli(list(args), input)
