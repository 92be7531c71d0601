"""Slow independent reimplementations used as test oracles."""
from __future__ import annotations

import math

import numpy as np

from coxperc.coxeter import INF, CoxeterMatrix


def gram_matrix(M: CoxeterMatrix, T) -> np.ndarray:
    T = list(T)
    g = np.eye(len(T))
    for i, s in enumerate(T):
        for j, t in enumerate(T):
            if i != j:
                m = M.m(s, t)
                g[i, j] = -1.0 if m == INF else -math.cos(math.pi / m)
    return g


def gram_spherical(M: CoxeterMatrix, T) -> bool:
    """Finite iff the Gram matrix is positive definite (smallest eigenvalue)."""
    return bool(np.linalg.eigvalsh(gram_matrix(M, T)).min() > 1e-9)


def reflection_matrices(M: CoxeterMatrix) -> list[np.ndarray]:
    """sigma_s(e_t) = e_t - 2 B(e_s, e_t) e_s on the simple-root basis."""
    k = M.rank
    B = gram_matrix(M, range(k))
    mats = []
    for s in range(k):
        R = np.eye(k)
        R[s, :] -= 2 * B[s, :]
        mats.append(R)
    return mats


def matrix_sphere_sizes(M: CoxeterMatrix, radius: int) -> list[int]:
    """BFS over group elements stored as full representation matrices."""
    gens = reflection_matrices(M)
    key = lambda A: tuple(np.round(A, 6).ravel().tolist())  # noqa: E731
    seen = {key(np.eye(M.rank))}
    frontier = [np.eye(M.rank)]
    sizes = [1]
    for _ in range(radius):
        nxt = []
        for A in frontier:
            for R in gens:
                B = A @ R
                kb = key(B)
                if kb not in seen:
                    seen.add(kb)
                    nxt.append(B)
        sizes.append(len(nxt))
        frontier = nxt
    return sizes


def enumerate_walks(nbrs: list[list[int]], root: int, n_max: int) -> tuple[list[int], list[int], list[int]]:
    """Closed walks, non-backtracking closed walks and oriented self-avoiding cycles, by listing every walk."""
    C = [0] * (n_max + 1)
    A_star = [0] * (n_max + 1)
    A = [0] * (n_max + 1)

    def go(path):
        n = len(path) - 1
        v = path[-1]
        if v == root:
            C[n] += 1
            nb = all(path[i] != path[i + 2] for i in range(n - 1))
            if nb:
                A_star[n] += 1
            if n >= 3 and len(set(path[:-1])) == n:
                A[n] += 1
        if n == n_max:
            return
        for w in nbrs[v]:
            path.append(w)
            go(path)
            path.pop()

    go([root])
    return C, A_star, A
