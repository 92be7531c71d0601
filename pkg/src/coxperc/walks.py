"""Spectral-radius bounds from Gabber weights, regular-tree path counts and the
non-backtracking growth transform.

Throughout, ``rho`` is the exponential growth rate of closed-walk counts at
a vertex (k times the spectral radius of simple random walk on a k-regular
graph), not the spectral radius itself.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .ball import CayleyBall, OrientationStats, RootedGraph
from .oracle import closed_walk_counts, nonbacktracking_counts, rooted

VARIANTS = ("basic", "general", "ra_compact")
SWITCHOVER = 1e-3


@dataclass(frozen=True)
class GabberParams:
    c1: float
    c2: float
    c3: float

    def __post_init__(self):
        if min(self.c1, self.c2, self.c3) <= 0:
            raise ValueError("Gabber weights must be strictly positive")

    def weight(self, i: int) -> float:
        if i not in (1, 2, 3):
            raise ValueError(f"no weight for in-degree {i}; weights exist only for r in 1..3")
        return (self.c1, self.c2, self.c3)[i - 1]

    @classmethod
    def for_variant(cls, k: int, variant: str) -> "GabberParams":
        """The weights each closed-form lemma uses."""
        if variant == "basic":
            c = math.sqrt((k - 3) / 3)
            return cls(c, c, c)
        if variant == "general":
            return cls(3, 3, 2)
        if variant == "ra_compact":
            return cls(5, 2, 1)
        raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class BoundValue:
    value: float
    source: str
    preconditions: dict = field(default_factory=dict)

    def __post_init__(self):
        if not (math.isfinite(self.value) and self.value > 0):
            raise ValueError(f"bound must be finite and positive, got {self.value}")

    def to_dict(self) -> dict:
        return {"value": self.value, "source": self.source, "preconditions": self.preconditions}


def gabber_vertex_sums(stats: OrientationStats, params: GabberParams) -> np.ndarray:
    """f_v = r(v) c_{r(v)} + sum_i q_i(v) / c_i for every vertex (NaN where r(v) > 3)."""
    r = stats.r
    c = np.array([np.nan, params.c1, params.c2, params.c3])
    f = np.where(r <= 3, r * c[np.minimum(r, 3)], np.nan)
    f = np.where(r == 0, 0.0, f)
    for i, q in stats.q.items():
        if i > 3:
            f = np.where(q > 0, np.nan, f)
        else:
            f = f + q / c[i]
    return f


def gabber_bound_on_ball(ball: CayleyBall, stats: OrientationStats, params: GabberParams) -> BoundValue:
    """Largest f_v over interior vertices: an observed value, never a certificate."""
    interior = stats.interior
    if not interior.any():
        raise ValueError("ball has no interior vertices; increase the radius")
    if stats.r[interior].max() > 3:
        raise ValueError(f"observed r(v) = {stats.r[interior].max()} > 3; Gabber weights undefined")
    f = gabber_vertex_sums(stats, params)[interior]
    i = int(np.argmax(f))
    return BoundValue(float(f[i]), "observed sup over ball interior", {
        "radius": ball.radius, "interior_vertices": int(interior.sum()),
        "excluded_boundary_vertices": int((~interior).sum()),
        "weights": [params.c1, params.c2, params.c3], "argmax_length": int(ball.lengths[interior][i])})


def rho_closed_form(k: int, variant: str) -> BoundValue:
    if variant == "basic":
        if k < 6:
            raise ValueError("basic bound needs k >= 6")
        return BoundValue(2 * math.sqrt(3 * (k - 3)), "basic: 2*sqrt(3(k-3))", {"k": k, "k>=6": True})
    if variant == "general":
        if k < 4:
            raise ValueError("a polyhedron has at least 4 faces")
        return BoundValue((k + 17) / 3, "general: (k+17)/3", {"k": k, "polyhedral": True})
    if variant == "ra_compact":
        if k < 12:
            raise ValueError("compact right-angled bound needs k >= 12")
        return BoundValue(k / 2 + 3.1, "ra_compact: k/2 + 31/10", {"k": k, "right_angled_compact": True})
    raise ValueError(f"unknown variant {variant!r}")


def gamma_star_value(rho: float, k: int) -> float:
    radicand = rho * rho - 4 * (k - 1)
    if radicand < 0:
        if radicand < -1e-12 * rho * rho:
            raise ValueError(f"rho = {rho} is below 2*sqrt(k-1) = {2 * math.sqrt(k - 1)}")
        radicand = 0.0
    return (rho + math.sqrt(radicand)) / 2


def gamma_star_bound(rho: float, k: int) -> BoundValue:
    """Upper bound on the non-backtracking cycle growth from a bound on rho."""
    return BoundValue(gamma_star_value(rho, k), "gamma* transform (rho + sqrt(rho^2 - 4(k-1)))/2",
                      {"rho": rho, "k": k})


@dataclass(frozen=True)
class TreeKernel:
    """c[n][d]: walks of length n in the k-regular tree between vertices at distance d."""

    k: int
    table: tuple[tuple[int, ...], ...]

    @property
    def n_max(self) -> int:
        return len(self.table) - 1

    def __call__(self, n: int, d: int) -> int:
        if d > n:
            return 0
        return self.table[n][d]


def tree_path_counts(k: int, n_max: int) -> TreeKernel:
    """Walks from distance d to the target, by steps along the distance chain."""
    if k < 2:
        raise ValueError("tree degree must be at least 2")
    rows = [[1] + [0] * n_max]
    for n in range(1, n_max + 1):
        prev = rows[-1]
        row = [0] * (n_max + 1)
        row[0] = k * prev[1]
        for d in range(1, n_max + 1):
            row[d] = prev[d - 1] + ((k - 1) * prev[d + 1] if d < n_max else 0)
        rows.append(row)
    return TreeKernel(k, tuple(tuple(r[:n + 1]) for n, r in enumerate(rows)))


def _edge_of_domain(k: int) -> float:
    return 1 / (2 * math.sqrt(k - 1))


def f_map(z: float, k: int) -> float:
    """2z / (1 + sqrt(1 - 4(k-1) z^2)) on [-R, R], R = 1/(2 sqrt(k-1))."""
    R = _edge_of_domain(k)
    if abs(z) > R:
        raise ValueError(f"|z| = {abs(z)} outside [0, {R}]")
    if abs(z) == R:
        return math.copysign(1 / math.sqrt(k - 1), z)
    root = math.sqrt(1 - 4 * (k - 1) * z * z)
    if abs(z) < SWITCHOVER:
        return 2 * z / (1 + root)
    return (1 - root) / (2 * (k - 1) * z)


def tree_green(k: int, d: int, z: float) -> float:
    """Generating function sum_n c(n, d) z^n of tree walk counts, |z| < 1/(2 sqrt(k-1))."""
    if k < 2 or d < 0:
        raise ValueError("need k >= 2 and d >= 0")
    if abs(z) >= _edge_of_domain(k):
        raise ValueError(f"|z| must be below {_edge_of_domain(k)}")
    root = math.sqrt(1 - 4 * (k - 1) * z * z)
    A = 2 * (k - 1) / (k - 2 + k * root)
    return A * f_map(z, k) ** d


@dataclass(frozen=True)
class CycleDecompositionVerdict:
    passed: bool
    lhs: tuple[int, ...]
    rhs: tuple[int, ...]
    a_star: tuple[int, ...]

    def to_dict(self) -> dict:
        return {"passed": self.passed, "C": list(self.lhs), "sum_a_star_c": list(self.rhs),
                "a_star": list(self.a_star)}


def verify_cycle_decomposition(graph: CayleyBall | RootedGraph, n_max: int) -> CycleDecompositionVerdict:
    """Check C_n = sum_d a*_d c(n, d) exactly for n <= n_max on a k-regular graph."""
    rooted(graph, n_max)
    g = graph.graph if isinstance(graph, CayleyBall) else graph
    near = (g.distances >= 0) & (g.distances <= n_max // 2)
    degrees = np.unique(g.degrees[near])
    if len(degrees) != 1:
        raise ValueError(f"graph is not regular near the root: degrees {degrees.tolist()}")
    k = int(degrees[0])
    C = closed_walk_counts(graph, n_max)
    a_star = nonbacktracking_counts(graph, n_max)
    kernel = tree_path_counts(k, n_max)
    rhs = [sum(a_star[d] * kernel(n, d) for d in range(n + 1)) for n in range(n_max + 1)]
    return CycleDecompositionVerdict(C == rhs, tuple(C), tuple(rhs), tuple(a_star))
