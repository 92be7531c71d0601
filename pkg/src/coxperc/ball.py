"""Exact Cayley-graph balls of Coxeter groups and orientation statistics.

Group elements are identified by their image of a point in the open
fundamental chamber under the contragredient of the geometric
representation.  Tits' theorem makes this orbit map injective, and the sign
of coordinate ``s`` tells whether multiplying by ``s`` goes up or down in
length, so the search never needs a word problem solver.

The search multiplies on the left (edges ``{w, s w}``).  Inversion maps this
graph onto the right-multiplication Cayley graph, fixes the identity and
preserves length, so every rooted statistic computed here is the same.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components
from scipy.spatial import cKDTree

from .coxeter import INF, CoxeterMatrix
from .ring import EXACT_ORDERS, QuadraticRing

DEFAULT_MAX_BALL_SIZE = 5_000_000
FLOAT_TOL = 1e-9
# distinct elements closer than this (relative) are an audit failure
AUDIT_TOL = 1e-6
_INT_LIMIT = 2 ** 60


class BallSizeExceeded(RuntimeError):
    def __init__(self, cap: int, partial_radius: int, size: int):
        super().__init__(f"ball size cap {cap} exceeded: radius {partial_radius} complete "
                         f"with {size} vertices, next sphere would pass the cap")
        self.cap = cap
        self.partial_radius = partial_radius
        self.size = size


class CollisionAuditError(ArithmeticError):
    """Float keys could not separate group elements reliably."""


@dataclass(frozen=True)
class GroupElement:
    canonical_key: bytes
    length: int


@dataclass(frozen=True)
class RootedGraph:
    """Undirected simple graph in CSR form with a root vertex.

    ``full_degree_radius`` is the largest distance from the root up to which
    every vertex has all of its neighbours in the graph (``inf`` for graphs
    that are complete as given).
    """

    indptr: np.ndarray
    indices: np.ndarray
    root: int = 0
    full_degree_radius: float = math.inf

    @classmethod
    def from_edges(cls, n: int, edges: np.ndarray, root: int = 0,
                   full_degree_radius: float = math.inf) -> "RootedGraph":
        edges = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        src = np.concatenate([edges[:, 0], edges[:, 1]])
        dst = np.concatenate([edges[:, 1], edges[:, 0]])
        order = np.lexsort((dst, src))
        src, dst = src[order], dst[order]
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.add.at(indptr, src + 1, 1)
        return cls(np.cumsum(indptr), dst, root, full_degree_radius)

    @classmethod
    def from_networkx(cls, g, root=None) -> "RootedGraph":
        """Finite networkx graph; ``root`` defaults to the first node."""
        nodes = list(g.nodes)
        pos = {v: i for i, v in enumerate(nodes)}
        root = nodes[0] if root is None else root
        edges = np.array([(pos[u], pos[v]) for u, v in g.edges], dtype=np.int64)
        return cls.from_edges(len(nodes), edges, pos[root])

    @property
    def num_vertices(self) -> int:
        return len(self.indptr) - 1

    @cached_property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    @cached_property
    def distances(self) -> np.ndarray:
        from scipy.sparse.csgraph import breadth_first_order
        dist = np.full(self.num_vertices, -1, dtype=np.int64)
        order, pred = breadth_first_order(self.adjacency(), self.root, directed=False)
        dist[self.root] = 0
        for v in order[1:]:
            dist[v] = dist[pred[v]] + 1
        return dist

    def adjacency(self, dtype=np.int64):
        from scipy.sparse import csr_matrix
        n = self.num_vertices
        return csr_matrix((np.ones(len(self.indices), dtype=dtype), self.indices, self.indptr), shape=(n, n))

    def edge_array(self) -> np.ndarray:
        src = np.repeat(np.arange(self.num_vertices), self.degrees)
        keep = src < self.indices
        return np.stack([src[keep], self.indices[keep]], axis=1)

    def induced(self, keep: np.ndarray) -> tuple["RootedGraph", np.ndarray]:
        """Subgraph on the vertices where ``keep`` is true, with the old->new map."""
        new_id = np.full(self.num_vertices, -1, dtype=np.int64)
        new_id[keep] = np.arange(int(keep.sum()))
        e = self.edge_array()
        e = e[keep[e[:, 0]] & keep[e[:, 1]]]
        sub = RootedGraph.from_edges(int(keep.sum()), new_id[e], int(new_id[self.root]), self.full_degree_radius)
        return sub, new_id


@dataclass(frozen=True, eq=False)
class CayleyBall:
    """Ball of radius ``radius`` around the identity (vertex 0).

    Vertices are numbered sphere by sphere.  ``edges[i] = (lower, upper)``
    with ``lengths[upper] = lengths[lower] + 1`` and ``upper = s * lower``
    for ``s = edge_labels[i]``.  ``keys`` hold the exact (or quantised
    float) orbit coordinates used for deduplication.
    """

    matrix: CoxeterMatrix
    radius: int
    lengths: np.ndarray
    edges: np.ndarray
    edge_labels: np.ndarray
    parent: np.ndarray
    parent_generator: np.ndarray
    keys: np.ndarray
    backend: str
    sphere_sizes: tuple[int, ...] = field(default=())

    @property
    def num_vertices(self) -> int:
        return len(self.lengths)

    @property
    def ball_sizes(self) -> list[int]:
        return list(np.cumsum(self.sphere_sizes).tolist())

    def word(self, v: int) -> list[int]:
        """A shortest word for vertex ``v`` (generators applied left to right)."""
        out = []
        while v != 0:
            out.append(int(self.parent_generator[v]))
            v = int(self.parent[v])
        return out[::-1]

    def element(self, v: int) -> GroupElement:
        return GroupElement(self.keys[v].tobytes(), int(self.lengths[v]))

    @cached_property
    def graph(self) -> RootedGraph:
        # vertices on the outer sphere are missing their upward neighbours
        return RootedGraph.from_edges(self.num_vertices, self.edges, 0, self.radius - 1)


def _backend_for(M: CoxeterMatrix, backend: str) -> str:
    if backend == "auto":
        return "exact" if M.finite_orders() <= EXACT_ORDERS else "float"
    if backend not in ("exact", "float"):
        raise ValueError(f"unknown backend {backend!r}")
    if backend == "exact" and not M.finite_orders() <= EXACT_ORDERS:
        raise ValueError("exact backend needs every finite order in {2,3,4,5,6}")
    return backend


def _row_keys(a: np.ndarray) -> np.ndarray:
    a = np.ascontiguousarray(a.reshape(len(a), -1))
    return a.view(np.dtype((np.void, a.dtype.itemsize * a.shape[1]))).ravel()


def _quantise(y: np.ndarray, scale: float = FLOAT_TOL) -> np.ndarray:
    q = np.floor(y / scale + 0.5)
    if np.any(np.abs(q) > _INT_LIMIT):
        raise OverflowError("float coordinates too large to quantise")
    return q.astype(np.int64)


def _float_dedupe(children: np.ndarray, older: list[np.ndarray], sphere: int):
    """Merge rows within FLOAT_TOL (sup norm, relative to the largest coordinate).

    Rows of the same element differ only by rounding noise; distinct
    elements of a discrete orbit stay far apart.  Anything in between, or a
    row near an element of smaller length, raises CollisionAuditError.
    """
    scale = max(1.0, float(np.abs(children).max()))
    tree = cKDTree(children)
    pairs = tree.query_pairs(AUDIT_TOL * scale, p=np.inf, output_type="ndarray")
    n = len(children)
    if len(pairs):
        gap = np.abs(children[pairs[:, 0]] - children[pairs[:, 1]]).max(axis=1)
        if np.any(gap > FLOAT_TOL * scale):
            raise CollisionAuditError(f"two elements on sphere {sphere} agree within {AUDIT_TOL:g} "
                                      f"but not within {FLOAT_TOL:g}")
        graph = coo_matrix((np.ones(len(pairs)), (pairs[:, 0], pairs[:, 1])), shape=(n, n))
        _, labels = connected_components(graph, directed=False)
    else:
        labels = np.arange(n)
    # first occurrence of each label, in order of appearance
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    first = first[order]
    relabel = np.empty(len(order), dtype=np.int64)
    relabel[order] = np.arange(len(order))
    inverse = relabel[labels]
    reps = children[first]
    for pts in older:
        d, _ = cKDTree(pts).query(reps, distance_upper_bound=AUDIT_TOL * scale, p=np.inf)
        if np.isfinite(d).any():
            raise CollisionAuditError(f"element on sphere {sphere} matches a shorter element")
    return first, inverse


def build_ball(M: CoxeterMatrix, radius: int, max_size: int = DEFAULT_MAX_BALL_SIZE,
               backend: str = "auto") -> CayleyBall:
    """Enumerate every element of length at most ``radius`` exactly once.

    Raises :class:`BallSizeExceeded` (carrying the last complete radius)
    when the vertex count would pass ``max_size``.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    k = M.rank
    backend = _backend_for(M, backend)
    if backend == "exact":
        ring = QuadraticRing.for_orders(M.finite_orders())
        dim = ring.dim
        mul = [[ring.mul_matrix(ring.two_cos(M.m(s, t))).T if s != t else None for t in range(k)]
               for s in range(k)]
        current = np.zeros((1, k, dim), dtype=np.int64)
        current[0, :, 0] = 1
    else:
        two_cos = np.array([[2.0 if M.m(s, t) == INF else 2 * math.cos(math.pi / M.m(s, t))
                             for t in range(k)] for s in range(k)])
        current = np.ones((1, k))

    def key_of(y):
        return y if backend == "exact" else _quantise(y)

    def up_sign(y, s):
        if backend == "exact":
            return ring.sign(y[:, s, :])
        v = y[:, s]
        if np.any(np.abs(v) < FLOAT_TOL):
            raise CollisionAuditError("coordinate within tolerance of zero; descent undecidable")
        return np.sign(v)

    def apply(y, s):
        out = y.copy()
        if backend == "exact":
            ys = y[:, s, :]
            for t in range(k):
                if t != s and M.m(s, t) != 2:
                    out[:, t, :] += ys @ mul[s][t]
            out[:, s, :] = -ys
            if np.any(np.abs(out) > _INT_LIMIT):
                raise OverflowError("exact coordinates exceed 64-bit range; reduce the radius")
        else:
            ys = y[:, s]
            out += ys[:, None] * two_cos[s][None, :]
            out[:, s] = -ys
        return out

    lengths = [np.zeros(1, dtype=np.int64)]
    parents = [np.array([-1], dtype=np.int64)]
    parent_gens = [np.array([-1], dtype=np.int64)]
    keys = [key_of(current)]
    edge_lo, edge_hi, edge_lab = [], [], []
    sizes = [1]
    total, offset = 1, 0
    older = [current]

    for n in range(radius):
        chunks, par, gen = [], [], []
        for s in range(k):
            idx = np.flatnonzero(up_sign(current, s) > 0)
            if len(idx):
                chunks.append(apply(current[idx], s))
                par.append(idx + offset)
                gen.append(np.full(len(idx), s, dtype=np.int64))
        if not chunks:
            break
        children = np.concatenate(chunks)
        par = np.concatenate(par)
        gen = np.concatenate(gen)
        if backend == "float":
            first, inverse = _float_dedupe(children, older, n + 1)
            # a misjudged descent lands two spheres down; keep the last two spheres
            older = [older[-1], children[first]]
        else:
            _, first, inverse = np.unique(_row_keys(children), return_index=True, return_inverse=True)
        ckeys = key_of(children)
        m = len(first)
        if total + m > max_size:
            raise BallSizeExceeded(max_size, n, total)
        new_ids = offset + len(current) + inverse.reshape(-1)
        edge_lo.append(par)
        edge_hi.append(new_ids)
        edge_lab.append(gen)
        offset += len(current)
        current = children[first]
        keys.append(ckeys[first])
        lengths.append(np.full(m, n + 1, dtype=np.int64))
        parents.append(par[first])
        parent_gens.append(gen[first])
        sizes.append(m)
        total += m

    empty = np.zeros(0, dtype=np.int64)
    edges = np.stack([np.concatenate(edge_lo or [empty]), np.concatenate(edge_hi or [empty])], axis=1)
    return CayleyBall(
        matrix=M, radius=radius,
        lengths=np.concatenate(lengths), edges=edges,
        edge_labels=np.concatenate(edge_lab or [empty]),
        parent=np.concatenate(parents), parent_generator=np.concatenate(parent_gens),
        keys=np.concatenate(keys), backend=backend, sphere_sizes=tuple(sizes))


@dataclass(frozen=True, eq=False)
class OrientationStats:
    """In-degree ``r`` and out-degree split ``q[i]`` under the length orientation.

    ``q`` maps each observed value ``i`` of r(head) to a per-vertex count
    array; values of ``i`` never observed are simply absent.  Counts are
    exact only where ``interior`` is true.
    """

    r: np.ndarray
    q: dict[int, np.ndarray]
    interior: np.ndarray
    degree: int

    def q_of(self, i: int) -> np.ndarray:
        return self.q.get(i, np.zeros_like(self.r))

    @property
    def max_interior_r(self) -> int:
        return int(self.r[self.interior].max())

    def out_degree(self) -> np.ndarray:
        return sum(self.q.values(), np.zeros_like(self.r))


def orientation_stats(ball: CayleyBall) -> OrientationStats:
    """Measure r(v) and q_i(v) from the ball's edges (nothing is assumed about r)."""
    n = ball.num_vertices
    lo, hi = ball.edges[:, 0], ball.edges[:, 1]
    r = np.bincount(hi, minlength=n).astype(np.int64)
    head_r = r[hi]
    q = {int(i): np.bincount(lo[head_r == i], minlength=n).astype(np.int64) for i in np.unique(head_r)}
    interior = ball.lengths < ball.radius
    return OrientationStats(r=r, q=q, interior=interior, degree=ball.matrix.rank)
