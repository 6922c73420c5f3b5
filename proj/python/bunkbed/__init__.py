"""Exact bunkbed computations backed by the C++ core.

Rationals come back as fractions.Fraction; graphs are given by a built-in
name ("K4", "fig4-left", "gadget-3", ...) or a dict {"n", "edges", ...}.
"""

import json
from fractions import Fraction

from . import _core
from ._core import GuardError, __version__

__all__ = [
    "GuardError",
    "__version__",
    "graph",
    "named_graphs",
    "pseudoinverse",
    "rc_connection_prob",
    "resistance",
    "run_request",
    "table2_row",
]


def _spec(g):
    return g if isinstance(g, str) else json.dumps(g)


def named_graphs():
    return list(_core.named_graphs())


def graph(g):
    return json.loads(_core.graph_json(_spec(g)))


def resistance(g, u, v):
    return Fraction(_core.resistance(_spec(g), str(u), str(v)))


def rc_connection_prob(g, p, q, u, v):
    return Fraction(_core.rc_connection_prob(_spec(g), str(Fraction(p)), str(Fraction(q)), str(u), str(v)))


def pseudoinverse(g):
    return [[Fraction(x) for x in row] for row in _core.pseudoinverse(_spec(g))]


def run_request(request):
    return json.loads(_core.run_request(json.dumps(request)))


def table2_row(n, p=Fraction(1, 100)):
    return json.loads(_core.table2_row(int(n), str(Fraction(p))))
