"""Combinatorial Coxeter polyhedra used as fixtures.

Faces become generators; adjacent faces meeting at angle pi/m get order m,
non-adjacent faces get infinity.  All constructions start from the
icosahedron graph, whose vertices, edges and triangles are the faces,
edges and vertices of the dodecahedron.
"""
from __future__ import annotations

import itertools

import networkx as nx

from .coxeter import INF, CoxeterMatrix


def _icosahedron():
    g = nx.icosahedral_graph()
    triangles = sorted(tuple(sorted(c)) for c in nx.enumerate_all_cliques(g) if len(c) == 3)
    return g, triangles


def _matrix(k: int, orders: dict[tuple[int, int], int], flags: dict, name: str) -> CoxeterMatrix:
    rows = [[1 if s == t else INF for t in range(k)] for s in range(k)]
    for (s, t), m in orders.items():
        rows[s][t] = rows[t][s] = m
    return CoxeterMatrix.from_rows(rows, flags, name)


def right_angled_dodecahedron() -> CoxeterMatrix:
    g, _ = _icosahedron()
    return _matrix(12, {e: 2 for e in g.edges}, {"hyperbolic_polyhedral": True, "right_angled": True,
                                                 "compact": True}, "right-angled dodecahedron")


def right_angled_truncated_icosahedron() -> CoxeterMatrix:
    """Football: 12 pentagons (icosahedron vertices) and 20 hexagons (its triangles)."""
    g, triangles = _icosahedron()
    hexagon = {tri: 12 + i for i, tri in enumerate(triangles)}
    orders = {}
    for tri, h in hexagon.items():
        for v in tri:
            orders[(v, h)] = 2
    for t1, t2 in itertools.combinations(triangles, 2):
        if len(set(t1) & set(t2)) == 2:
            orders[(hexagon[t1], hexagon[t2])] = 2
    return _matrix(32, orders, {"hyperbolic_polyhedral": True, "right_angled": True, "compact": True},
                   "right-angled truncated icosahedron")


# Non-right edges of the mixed dodecahedron: two of them meet at each of three
# vertices (types A3, B3, H3); every other vertex sees at most one.
_MIXED_LABELS = {(0, 1): 3, (1, 5): 4, (3, 4): 3, (3, 9): 5, (7, 8): 3, (8, 9): 3, (10, 11): 4}


def mixed_dodecahedron() -> CoxeterMatrix:
    """Compact dodecahedron with some dihedral angles pi/3, pi/4, pi/5.

    The dodecahedron has no prismatic 3- or 4-circuits, so by Andreev's
    theorem any labelling whose vertex triples are spherical is realisable.
    """
    g, _ = _icosahedron()
    orders = {tuple(sorted(e)): 2 for e in g.edges}
    for e, m in _MIXED_LABELS.items():
        orders[tuple(sorted(e))] = m
    return _matrix(12, orders, {"hyperbolic_polyhedral": True, "right_angled": False, "compact": True},
                   "dodecahedron with mixed dihedral angles")


def truncated_vertex_dodecahedron() -> CoxeterMatrix:
    """Dodecahedron with one vertex cut off by a new face orthogonal to its three neighbours.

    The three old faces around the cut vertex form a prismatic 3-circuit, so
    their angles pi/3, pi/3, pi/4 must sum below pi.
    """
    g, triangles = _icosahedron()
    a, b, c = triangles[0]
    orders = {tuple(sorted(e)): 2 for e in g.edges}
    orders[(a, b)], orders[(a, c)], orders[(b, c)] = 3, 3, 4
    for v in (a, b, c):
        orders[(v, 12)] = 2
    return _matrix(13, orders, {"hyperbolic_polyhedral": True, "right_angled": False, "compact": True},
                   "dodecahedron with one vertex truncated")


def tetrahedron_353() -> CoxeterMatrix:
    """Compact hyperbolic Coxeter tetrahedron with linear diagram 3-5-3."""
    rows = [[1, 3, 2, 2], [3, 1, 5, 2], [2, 5, 1, 3], [2, 2, 3, 1]]
    return CoxeterMatrix.from_rows(rows, {"hyperbolic_polyhedral": True, "right_angled": False,
                                          "compact": True}, "hyperbolic tetrahedron [3,5,3]")


CONSTRUCTORS = {
    "dodecahedron": right_angled_dodecahedron,
    "truncated_icosahedron": right_angled_truncated_icosahedron,
    "dodecahedron_mixed": mixed_dodecahedron,
    "dodecahedron_truncated_vertex": truncated_vertex_dodecahedron,
    "tetrahedron_353": tetrahedron_353,
}
