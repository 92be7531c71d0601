import math

import numpy as np
import pytest

from coxperc.ball import build_ball
from coxperc.coxeter import INF, CoxeterMatrix
from coxperc.percolation import parse_p_grid, percolation_sample, percolation_sweep


def free_coxeter(k):
    return CoxeterMatrix.from_rows([[1 if i == j else INF for j in range(k)] for i in range(k)])


def tree_theta(k, radius, p):
    """Exact probability that the root of a k-regular tree ball reaches depth ``radius``."""
    q = 1.0
    for _ in range(radius - 1):
        q = 1 - (1 - p * q) ** (k - 1)
    return 1 - (1 - p * q) ** k


@pytest.mark.parametrize("mode", ["bond", "site"])
def test_p_zero(dodeca_ball4, mode):
    s = percolation_sample(dodeca_ball4, 0.0, mode, seed=3)
    assert s.root_cluster_size == 1 and not s.root_touches_boundary
    if mode == "site":
        assert s.open_mask[0] and s.open_mask.sum() == 1
        assert s.boundary_clusters == 0
    else:
        assert s.boundary_clusters == dodeca_ball4.sphere_sizes[-1]


@pytest.mark.parametrize("mode", ["bond", "site"])
def test_p_one(dodeca_ball4, mode):
    s = percolation_sample(dodeca_ball4, 1.0, mode)
    assert s.root_cluster_size == dodeca_ball4.num_vertices
    assert s.root_touches_boundary and s.boundary_clusters == 1


def test_cluster_labels_match_networkx(dodeca_ball4):
    import networkx as nx
    s = percolation_sample(dodeca_ball4, 0.3, "bond", seed=11)
    g = nx.Graph()
    g.add_nodes_from(range(dodeca_ball4.num_vertices))
    g.add_edges_from(map(tuple, dodeca_ball4.edges[s.open_mask]))
    assert s.root_cluster_size == len(nx.node_connected_component(g, 0))


def test_deterministic(dodeca_ball4):
    a = percolation_sweep(dodeca_ball4, [0.1, 0.3], 10, seed=5)
    b = percolation_sweep(dodeca_ball4, [0.1, 0.3], 10, seed=5)
    c = percolation_sweep(dodeca_ball4, [0.1, 0.3], 10, seed=6)
    assert a == b and a.hits != c.hits


def test_workers_do_not_change_results(dodeca_ball4):
    grid = [0.05, 0.1, 0.2]
    assert percolation_sweep(dodeca_ball4, grid, 12, seed=2) == percolation_sweep(dodeca_ball4, grid, 12, seed=2, workers=4)


@pytest.mark.parametrize("mode", ["bond", "site"])
def test_coupling_is_monotone(dodeca_ball4, mode):
    grid = np.linspace(0, 1, 11)
    res = percolation_sweep(dodeca_ball4, grid, 15, mode, seed=1)
    for per_sample in res.hits:
        assert list(per_sample) == sorted(per_sample)
    assert res.theta_hat[0] == 0 and res.theta_hat[-1] == 1


def test_tree_theta_matches_recursion():
    k, radius, n = 3, 6, 4000
    ball = build_ball(free_coxeter(k), radius)
    assert ball.num_vertices == 1 + k * (2 ** radius - 1)
    grid = [0.5, 0.7, 0.9]
    res = percolation_sweep(ball, grid, n, seed=0)
    for p, th in zip(grid, res.theta_hat):
        exact = tree_theta(k, radius, p)
        assert abs(th - exact) <= 4 * math.sqrt(exact * (1 - exact) / n) + 1e-9


def test_csv(dodeca_ball4):
    text = percolation_sweep(dodeca_ball4, [0.0, 1.0], 2).to_csv().splitlines()
    assert text[0] == "p,theta_hat,mean_boundary_clusters,samples"
    assert text[1].startswith("0.0,0.0,") and text[2] == "1.0,1.0,1.0,2"


def test_errors(dodeca_ball4):
    with pytest.raises(ValueError):
        percolation_sample(dodeca_ball4, 1.5)
    with pytest.raises(ValueError):
        percolation_sweep(dodeca_ball4, [], 3)
    with pytest.raises(ValueError):
        percolation_sweep(dodeca_ball4, [-0.1], 3)
    with pytest.raises(ValueError):
        percolation_sweep(dodeca_ball4, [0.5], 0)
    with pytest.raises(ValueError):
        percolation_sample(dodeca_ball4, 0.5, "edge")


def test_parse_p_grid():
    assert parse_p_grid("0:1:5").tolist() == [0, 0.25, 0.5, 0.75, 1]
    assert parse_p_grid("0:0.3:4").tolist() == [0, 0.1, 0.2, 0.3]
    for bad in ("0:1", "a:b:3", "0:1:0"):
        with pytest.raises(ValueError):
            parse_p_grid(bad)
