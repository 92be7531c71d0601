"""Brute-force cycle counts on finite rooted graphs.

``C[n]`` counts closed walks of length n at the root, ``a_star[n]`` those
without backtracks (a step immediately reversing the previous one; the
first and last step are not compared), and ``a[n]`` the oriented
self-avoiding cycles through the root.  ``a[n]`` is 0 for n < 3, so each
geometric cycle of length >= 3 through the root is counted twice.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .ball import CayleyBall, RootedGraph

DEFAULT_SAW_CAP = 16


class InsufficientRadiusError(ValueError):
    pass


def _needed_radius(n_max: int) -> int:
    return math.ceil(n_max / 2)


def rooted(graph: CayleyBall | RootedGraph, n_max: int) -> RootedGraph:
    """The part of ``graph`` that closed walks of length <= n_max can reach.

    Walks returning to the root in n steps never go further than n/2, so
    every vertex up to that distance must have its full neighbourhood.
    """
    if isinstance(graph, CayleyBall):
        if graph.radius < _needed_radius(n_max) + 1:
            raise InsufficientRadiusError(
                f"ball radius {graph.radius} < ceil({n_max}/2) + 1 = {_needed_radius(n_max) + 1}")
        graph = graph.graph
    if graph.full_degree_radius < _needed_radius(n_max):
        raise InsufficientRadiusError(
            f"graph complete only to distance {graph.full_degree_radius}, need {_needed_radius(n_max)}")
    keep = graph.distances >= 0
    keep &= graph.distances <= _needed_radius(n_max)
    if keep.all():
        return graph
    sub, _ = graph.induced(keep)
    return sub


def _count_dtype(g: RootedGraph, n_max: int):
    k = int(g.degrees.max()) if g.num_vertices > 1 else 1
    return np.int64 if n_max * math.log2(max(k, 2)) < 62 else object


def _spread(n: int, index: np.ndarray, values: np.ndarray) -> np.ndarray:
    out = np.zeros(n, dtype=values.dtype)
    if values.dtype == object:
        out[:] = 0
    np.add.at(out, index, values)
    return out


def closed_walk_counts(graph: CayleyBall | RootedGraph, n_max: int) -> list[int]:
    g = rooted(graph, n_max)
    dtype = _count_dtype(g, n_max)
    n = g.num_vertices
    src = np.repeat(np.arange(n), g.degrees)
    x = np.zeros(n, dtype=dtype)
    x[:] = 0
    x[g.root] = 1
    out = [1]
    adj = g.adjacency() if dtype is np.int64 else None
    for _ in range(n_max):
        x = adj @ x if adj is not None else _spread(n, src, x[g.indices])
        out.append(int(x[g.root]))
    return out


def _reverse_edge_index(tail: np.ndarray, head: np.ndarray) -> np.ndarray:
    order = np.lexsort((head, tail))
    rorder = np.lexsort((tail, head))
    rev = np.empty(len(tail), dtype=np.int64)
    rev[order] = rorder
    return rev


def nonbacktracking_counts(graph: CayleyBall | RootedGraph, n_max: int) -> list[int]:
    """Dynamic programming over directed-edge states, forbidding immediate reversal."""
    g = rooted(graph, n_max)
    dtype = _count_dtype(g, n_max)
    n = g.num_vertices
    tail = np.repeat(np.arange(n), g.degrees)
    head = g.indices
    rev = _reverse_edge_index(tail, head)
    into_root = head == g.root
    x = (tail == g.root).astype(np.int64).astype(dtype)
    out = [1]
    for step in range(1, n_max + 1):
        if step > 1:
            arriving = _spread(n, head, x)
            x = arriving[tail] - x[rev]
        out.append(int(x[into_root].sum()))
    return out


def self_avoiding_cycle_counts(graph: CayleyBall | RootedGraph, n_max: int) -> list[int]:
    """Depth-first enumeration of oriented self-avoiding cycles at the root."""
    g = rooted(graph, n_max)
    dist = g.distances
    nbrs = [g.indices[g.indptr[v]:g.indptr[v + 1]].tolist() for v in range(g.num_vertices)]
    root = g.root
    near_root = set(nbrs[root])
    counts = [0] * (n_max + 1)
    visited = [False] * g.num_vertices
    visited[root] = True

    def extend(v: int, length: int):
        if length >= 2 and v in near_root:
            counts[length + 1] += 1
        if length + 1 >= n_max:
            return
        remaining = n_max - length - 1
        for w in nbrs[v]:
            if not visited[w] and dist[w] <= remaining:
                visited[w] = True
                extend(w, length + 1)
                visited[w] = False

    for w in nbrs[root]:
        visited[w] = True
        extend(w, 1)
        visited[w] = False
    return counts


@dataclass(frozen=True)
class WalkSpectra:
    root: int
    C: tuple[int, ...]
    a_star: tuple[int, ...]
    a: tuple[int, ...]
    note: str = ""

    @property
    def n_max(self) -> int:
        return len(self.C) - 1

    def chain_holds(self) -> bool:
        return all(self.a[n] <= self.a_star[n] <= self.C[n] for n in range(len(self.a)))

    def to_dict(self) -> dict:
        return {"root": self.root, "C": list(self.C), "a_star": list(self.a_star), "a": list(self.a),
                "note": self.note}


def count_walk_spectra(graph: CayleyBall | RootedGraph, n_max: int, saw_max: int | None = None) -> WalkSpectra:
    """All three cycle counts up to ``n_max`` (self-avoiding ones up to ``saw_max``)."""
    saw_max = min(n_max, DEFAULT_SAW_CAP) if saw_max is None else min(saw_max, n_max)
    C = closed_walk_counts(graph, n_max)
    a_star = nonbacktracking_counts(graph, n_max)
    a = self_avoiding_cycle_counts(graph, saw_max)
    root = graph.graph.root if isinstance(graph, CayleyBall) else graph.root
    note = f"exact for n <= {n_max}; self-avoiding cycles enumerated for n <= {saw_max}"
    return WalkSpectra(root, tuple(C), tuple(a_star), tuple(a), note)


def regular_tree_ball(k: int, radius: int) -> RootedGraph:
    """Ball of the k-regular tree; vertices at distance < radius have degree k."""
    edges = []
    frontier, nxt_id = [0], 1
    for depth in range(radius):
        new = []
        for v in frontier:
            for _ in range(k if depth == 0 else k - 1):
                edges.append((v, nxt_id))
                new.append(nxt_id)
                nxt_id += 1
        frontier = new
    return RootedGraph.from_edges(nxt_id, np.array(edges, dtype=np.int64), 0, radius - 1)


def complete_graph(n: int) -> RootedGraph:
    edges = np.array([(i, j) for i in range(n) for j in range(i + 1, n)], dtype=np.int64)
    return RootedGraph.from_edges(n, edges, 0)
