"""Seeded Bernoulli bond/site percolation on finite Cayley balls.

Free boundary conditions: the outside of the ball is simply absent, and the
"boundary" is the outermost sphere.  Each sample draws one uniform per edge
(bond) or vertex (site) from a stream keyed by ``(seed, sample_index)``;
an item is open at parameter p iff its uniform is below p, which couples all
parameters of a sweep.
"""
from __future__ import annotations

import csv
import io
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from .ball import CayleyBall

MODES = ("bond", "site")


def _uniforms(seed: int, sample_index: int, n: int) -> np.ndarray:
    rng = np.random.default_rng(np.random.SeedSequence([seed, sample_index]))
    return rng.random(n)


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p = {p} outside [0, 1]")


@dataclass(frozen=True, eq=False)
class PercolationSample:
    p: float
    mode: str
    seed: int
    sample_index: int
    open_mask: np.ndarray
    labels: np.ndarray  # -1 for closed vertices in site mode
    root_cluster_size: int
    root_touches_boundary: bool
    boundary_clusters: int


def _label(ball: CayleyBall, mode: str, open_mask: np.ndarray) -> np.ndarray:
    n = ball.num_vertices
    e = ball.edges
    if mode == "bond":
        keep = open_mask
        vertex_open = np.ones(n, dtype=bool)
    else:
        vertex_open = open_mask
        keep = vertex_open[e[:, 0]] & vertex_open[e[:, 1]]
    kept = e[keep]
    adj = coo_matrix((np.ones(len(kept), dtype=np.int8), (kept[:, 0], kept[:, 1])), shape=(n, n))
    _, labels = connected_components(adj, directed=False)
    return np.where(vertex_open, labels, -1)


def _summary(ball: CayleyBall, labels: np.ndarray) -> tuple[int, bool, int]:
    boundary = ball.lengths == ball.radius
    root_label = labels[0]
    in_root = labels == root_label
    boundary_labels = np.unique(labels[boundary & (labels >= 0)])
    return int(in_root.sum()), bool((in_root & boundary).any()), len(boundary_labels)


def _mask(ball: CayleyBall, mode: str, u: np.ndarray, p: float) -> np.ndarray:
    mask = u < p
    if mode == "site":
        mask = mask.copy()
        mask[0] = True  # the root is declared open
    return mask


def _n_items(ball: CayleyBall, mode: str) -> int:
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    return len(ball.edges) if mode == "bond" else ball.num_vertices


def percolation_sample(ball: CayleyBall, p: float, mode: str = "bond", seed: int = 0,
                       sample_index: int = 0) -> PercolationSample:
    _check_p(p)
    u = _uniforms(seed, sample_index, _n_items(ball, mode))
    mask = _mask(ball, mode, u, p)
    labels = _label(ball, mode, mask)
    size, touches, nb = _summary(ball, labels)
    return PercolationSample(p, mode, seed, sample_index, mask, labels, size, touches, nb)


@dataclass(frozen=True)
class SweepResult:
    p: tuple[float, ...]
    theta_hat: tuple[float, ...]
    mean_boundary_clusters: tuple[float, ...]
    samples: int
    mode: str
    seed: int
    hits: tuple[tuple[bool, ...], ...] = ()  # per sample, per p: root reached the boundary

    def to_dict(self) -> dict:
        return {"mode": self.mode, "seed": self.seed, "samples": self.samples,
                "rows": [{"p": p, "theta_hat": th, "mean_boundary_clusters": mb}
                         for p, th, mb in zip(self.p, self.theta_hat, self.mean_boundary_clusters)]}

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["p", "theta_hat", "mean_boundary_clusters", "samples"])
        for p, th, mb in zip(self.p, self.theta_hat, self.mean_boundary_clusters):
            w.writerow([repr(float(p)), repr(float(th)), repr(float(mb)), self.samples])
        return buf.getvalue()


def _one_sample(ball: CayleyBall, grid: np.ndarray, mode: str, seed: int, j: int):
    u = _uniforms(seed, j, _n_items(ball, mode))
    hits, counts = [], []
    for p in grid:
        labels = _label(ball, mode, _mask(ball, mode, u, p))
        _, touches, nb = _summary(ball, labels)
        hits.append(touches)
        counts.append(nb)
    return tuple(hits), counts


def percolation_sweep(ball: CayleyBall, p_grid, samples_per_p: int, mode: str = "bond", seed: int = 0,
                      workers: int = 1) -> SweepResult:
    """Coupled estimates of the boundary-hitting probability along ``p_grid``.

    Samples are independent tasks keyed by ``(seed, index)``, so the result
    does not depend on ``workers``.
    """
    grid = np.asarray(list(p_grid), dtype=float)
    if grid.size == 0:
        raise ValueError("empty p grid")
    for p in grid:
        _check_p(p)
    if samples_per_p < 1:
        raise ValueError("need at least one sample")
    _n_items(ball, mode)
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(lambda j: _one_sample(ball, grid, mode, seed, j), range(samples_per_p)))
    else:
        results = [_one_sample(ball, grid, mode, seed, j) for j in range(samples_per_p)]
    hits = np.array([h for h, _ in results], dtype=np.int64)
    counts = np.array([c for _, c in results], dtype=np.int64)
    theta = hits.sum(axis=0) / samples_per_p
    mean_b = counts.sum(axis=0) / samples_per_p
    return SweepResult(tuple(grid.tolist()), tuple(theta.tolist()), tuple(mean_b.tolist()),
                       samples_per_p, mode, seed, tuple(h for h, _ in results))


def parse_p_grid(text: str) -> np.ndarray:
    """``"a:b:steps"`` -> ``steps`` evenly spaced points from a to b."""
    try:
        a, b, steps = text.split(":")
        a, b, steps = float(a), float(b), int(steps)
    except ValueError as exc:
        raise ValueError(f"p grid must look like a:b:steps, got {text!r}") from exc
    if steps < 1:
        raise ValueError("p grid needs at least one step")
    return np.round(np.linspace(a, b, steps), 12)
