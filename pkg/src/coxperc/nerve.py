"""The nerve of a Coxeter system and its combinatorial checks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass

import networkx as nx

from .coxeter import INF, CoxeterMatrix, is_spherical


@dataclass(frozen=True)
class Nerve:
    """Simplicial complex of non-empty spherical subsets.

    ``simplices[d]`` lists the d-dimensional simplices as sorted tuples.
    Dimensions above 3 are enumerated only when a 3-simplex exists.
    """

    rank: int
    simplices: dict[int, tuple[tuple[int, ...], ...]]
    edge_orders: dict[tuple[int, int], int]

    @property
    def f0(self) -> int:
        return len(self.simplices.get(0, ()))

    @property
    def f1(self) -> int:
        return len(self.simplices.get(1, ()))

    @property
    def f2(self) -> int:
        return len(self.simplices.get(2, ()))

    @property
    def dimension(self) -> int:
        return max(d for d, s in self.simplices.items() if s)

    def degrees(self) -> list[int]:
        deg = [0] * self.rank
        for s, t in self.simplices.get(1, ()):
            deg[s] += 1
            deg[t] += 1
        return deg

    @property
    def max_vertex_degree(self) -> int:
        return max(self.degrees())

    def skeleton(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.rank))
        g.add_edges_from(self.simplices.get(1, ()))
        return g

    def all_simplices(self):
        for d in sorted(self.simplices):
            yield from self.simplices[d]


def build_nerve(M: CoxeterMatrix) -> Nerve:
    k = M.rank
    simplices: dict[int, tuple[tuple[int, ...], ...]] = {0: tuple((s,) for s in range(k))}
    simplices[1] = tuple(p for p in itertools.combinations(range(k), 2) if M.m(*p) != INF)
    level = set(simplices[1])
    d = 1
    # downward closure lets each level extend the previous one
    while level and (d < 3 or simplices.get(3)):
        d += 1
        cand = set()
        for simplex in level:
            for s in range(simplex[-1] + 1, k):
                new = simplex + (s,)
                if all(face in level for face in itertools.combinations(new, d)):
                    cand.add(new)
        level = {c for c in cand if is_spherical(M, c)}
        simplices[d] = tuple(sorted(level))
    edge_orders = {(s, t): int(M.m(s, t)) for s, t in simplices[1]}
    return Nerve(k, simplices, edge_orders)


@dataclass(frozen=True)
class NerveReport:
    is_flag: bool
    has_3_simplex: bool
    is_sphere_triangulation: bool
    f0: int
    f1: int
    f2: int
    max_vertex_degree: int
    euler_characteristic: int
    sphere_failures: tuple[str, ...] = ()
    flag_witness: tuple[int, ...] | None = None

    def to_dict(self) -> dict:
        return {
            "is_flag": self.is_flag, "has_3_simplex": self.has_3_simplex,
            "is_sphere_triangulation": self.is_sphere_triangulation,
            "counts": {"f0": self.f0, "f1": self.f1, "f2": self.f2},
            "max_vertex_degree": self.max_vertex_degree,
            "euler_characteristic": self.euler_characteristic,
            "sphere_failures": list(self.sphere_failures),
            "flag_witness": None if self.flag_witness is None else list(self.flag_witness),
        }


def _is_cycle(g: nx.Graph) -> bool:
    return g.number_of_nodes() >= 3 and nx.is_connected(g) and all(d == 2 for _, d in g.degree)


def classify_nerve(N: Nerve) -> NerveReport:
    skeleton = N.skeleton()
    simplex_set = set(N.all_simplices())
    witness = None
    for clique in nx.enumerate_all_cliques(skeleton):
        if len(clique) >= 3 and tuple(sorted(clique)) not in simplex_set:
            witness = tuple(sorted(clique))
            break
    has_3 = bool(N.simplices.get(3))

    failures = []
    if has_3:
        failures.append("has a simplex of dimension >= 3")
    if not nx.is_connected(skeleton):
        failures.append("not connected")
    triangles = N.simplices.get(2, ())
    per_edge = {e: 0 for e in N.simplices.get(1, ())}
    for tri in triangles:
        for e in itertools.combinations(tri, 2):
            per_edge[e] += 1
    bad_edges = [e for e, c in per_edge.items() if c != 2]
    if bad_edges:
        failures.append(f"edge {bad_edges[0]} lies in {per_edge[bad_edges[0]]} triangles")
    for v in range(N.rank):
        link = nx.Graph()
        link.add_nodes_from(u for u in skeleton.neighbors(v))
        link.add_edges_from(tuple(x for x in tri if x != v) for tri in triangles if v in tri)
        if not _is_cycle(link):
            failures.append(f"link of vertex {v} is not a cycle")
            break
    chi = N.f0 - N.f1 + N.f2 - len(N.simplices.get(3, ()))
    if chi != 2:
        failures.append(f"Euler characteristic {chi} != 2")
    return NerveReport(
        is_flag=witness is None, has_3_simplex=has_3, is_sphere_triangulation=not failures,
        f0=N.f0, f1=N.f1, f2=N.f2, max_vertex_degree=N.max_vertex_degree,
        euler_characteristic=chi, sphere_failures=tuple(failures), flag_witness=witness)


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str
    witness: object = None

    def to_dict(self) -> dict:
        return {"name": self.name, "passed": self.passed, "detail": self.detail,
                "witness": self.witness}


def validate_right_angled_compact(M: CoxeterMatrix, R: NerveReport) -> list[CheckResult]:
    """Combinatorial consequences of being a compact right-angled polyhedron group."""
    k = M.rank
    bad = [(s, t) for s, t in M.pairs() if M.m(s, t) not in (2, INF)]
    checks = [
        CheckResult("finite_orders_are_2", not bad,
                    "all finite off-diagonal orders equal 2" if not bad
                    else f"m{bad[0]} = {int(M.m(*bad[0]))}", list(bad[0]) if bad else None),
        CheckResult("flag_sphere_triangulation", R.is_flag and R.is_sphere_triangulation,
                    "nerve is a flag triangulation of the 2-sphere" if R.is_flag and R.is_sphere_triangulation
                    else "; ".join(list(R.sphere_failures)
                                   + ([] if R.is_flag else [f"non-flag clique {list(R.flag_witness)}"])),
                    None if R.is_flag else list(R.flag_witness)),
        CheckResult("max_degree_bound", 2 * R.max_vertex_degree <= k - 1,
                    f"max nerve degree {R.max_vertex_degree} vs (k-1)/2 = {(k - 1) / 2}", R.max_vertex_degree),
        CheckResult("at_least_12_faces", k >= 12, f"k = {k}", k),
    ]
    return checks
