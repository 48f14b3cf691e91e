"""Exact integral homology of sphere quotients and tropical moduli spaces.

Thin dict-level wrappers around the C++ extension; structured values cross
the boundary as JSON text.
"""

import json as _json

try:
    from ._trophom import (  # type: ignore
        CapExceeded,
        ConsistencyError,
        InvalidInput,
        __version__,
        check_one_skeleton,
        contains_transposition,
        group_order,
        parse_permutation,
        smith_diagonal,
    )
    from . import _trophom as _core  # type: ignore
except ImportError:  # build-tree layout: extension sits next to the package
    from _trophom import (  # type: ignore
        CapExceeded,
        ConsistencyError,
        InvalidInput,
        __version__,
        check_one_skeleton,
        contains_transposition,
        group_order,
        parse_permutation,
        smith_diagonal,
    )
    import _trophom as _core  # type: ignore

__all__ = [
    "CapExceeded",
    "ConsistencyError",
    "InvalidInput",
    "__version__",
    "check_one_skeleton",
    "contains_transposition",
    "contract",
    "delta_report",
    "edge_group_order",
    "enumerate_graphs",
    "group_order",
    "in_bm",
    "isomorphic",
    "parse_permutation",
    "smith_diagonal",
    "sphere_quotient_homology",
    "sphere_quotient_homology_graph",
]


def sphere_quotient_homology(p, generators, level=1, shortcut=True):
    """Reduced homology of S^{p-1}/G as a list of {degree, rank, torsion}."""
    return _json.loads(_core.sphere_quotient_homology(p, list(generators), level, shortcut))


def sphere_quotient_homology_graph(graph, level=1, shortcut=True):
    return _json.loads(
        _core.sphere_quotient_homology_graph(_json.dumps(graph), level, shortcut)
    )


def enumerate_graphs(genus, n=0, max_edges=0):
    """Isomorphism classes of stable graphs as a list of graph dicts."""
    return _json.loads(_core.enumerate_graphs(genus, n, max_edges))


def in_bm(graph):
    return _core.in_bm(_json.dumps(graph))


def contract(graph, edge):
    return _json.loads(_core.contract(_json.dumps(graph), edge))


def edge_group_order(graph):
    return _core.edge_group_order(_json.dumps(graph))


def isomorphic(a, b):
    return _core.isomorphic(_json.dumps(a), _json.dumps(b))


def delta_report(genus, n=0, level=1, jobs=1):
    """Relative cells, E1 page, and certified torsion for Delta_{g,n}."""
    return _json.loads(_core.delta_report(genus, n, level, jobs))
