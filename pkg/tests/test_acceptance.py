"""Acceptance criteria, one test each; every test prints a PASS/FAIL line.

Run ``pytest tests/test_acceptance.py -v`` or ``python tests/test_acceptance.py``.
"""
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

import numpy as np
import pytest

sys.path.insert(0, str(Path(__file__).parent))

from coxperc.ball import build_ball, orientation_stats
from coxperc.certificate import b1_value, b2_value, certify_phase, reproduce_threshold_table
from coxperc.fixtures import fixture_names, load_fixture
from coxperc.growth import (SPHERICAL_TRIANGLE_ROWS, ball_size_series, bracket_inequality_holds,
                            dihedral_triangle_row, growth_lower_bound_check, growth_rate,
                            steinberg_inverse_growth, table_row_inequality)
from coxperc.invariants import orientation_checks
from coxperc.oracle import closed_walk_counts, complete_graph, regular_tree_ball
from coxperc.percolation import percolation_sweep
from coxperc.walks import (GabberParams, gabber_bound_on_ball, gamma_star_value, tree_green, tree_path_counts,
                           verify_cycle_decomposition)
from conftest import ACCEPTANCE_LINES, cached_ball, small_ball


def verdict(number, title, ok, detail=""):
    line = f"{'PASS' if ok else 'FAIL'}  [{number:2d}] {title}" + (f"  ({detail})" if detail else "")
    ACCEPTANCE_LINES.append(line)
    print(line)
    assert ok, line


def test_01_threshold_table():
    t0 = time.perf_counter()
    table = reproduce_threshold_table()
    dt = time.perf_counter() - t0
    got = {lemma: (v["rho"], v["gamma_star"]) for lemma, v in table.items()}
    want = {"basic": (18, 15), "general": (15, 13), "ra_compact": (15, 12)}
    verdict(1, "threshold table", got == want and dt < 1, f"{got}, {dt:.3f} s")


def test_02_dodecahedron_certificate():
    t0 = time.perf_counter()
    M = load_fixture("dodecahedron")
    cert = certify_phase(M)
    gr = growth_rate(steinberg_inverse_growth(M)).growth_rate
    dt = time.perf_counter() - t0
    b1 = (91 + math.sqrt(3881)) / 20
    b2 = 4 + math.sqrt(15)
    ok = (cert.certified and abs(cert.b1 - b1) <= 1e-9 and abs(cert.b2 - b2) <= 1e-9
          and abs(gr - b2) <= 1e-9 and abs(cert.margin - 0.2083) <= 1e-3 and dt < 5)
    verdict(2, "dodecahedron certificate", ok,
            f"b1 = {cert.b1:.12f}, b2 = {cert.b2:.12f}, margin = {cert.margin:.6f}, {dt:.2f} s")


def test_03_general_base_points():
    k13 = (b1_value(13, "general", "gamma_star"), b2_value(13))
    k18 = (b1_value(18, "basic", "rho"), b2_value(18))
    ok = (abs(k13[0] - (5 + math.sqrt(13))) <= 1e-12 and abs(k13[1] - (9 + math.sqrt(77)) / 2) <= 1e-12
          and abs(k18[0] - 2 * math.sqrt(45)) <= 1e-12 and abs(k18[1] - (7 + math.sqrt(48))) <= 1e-12
          and k13[0] < k13[1] and k18[0] < k18[1])
    verdict(3, "general-case base points", ok,
            f"k=13: {k13[0]:.12f} < {k13[1]:.12f}; k=18: {k18[0]:.12f} < {k18[1]:.12f}")


def test_04_steinberg_vs_bfs():
    t0 = time.perf_counter()
    M = load_fixture("dodecahedron")
    ball = build_ball(M, 4)
    spheres, _ = ball_size_series(steinberg_inverse_growth(M), 4)
    dt = time.perf_counter() - t0
    bfs = [int(s) for s in ball.sphere_sizes]
    verdict(4, "Steinberg series equals BFS sphere sizes", bfs == spheres and dt < 60, f"{bfs}, {dt:.2f} s")


def test_05_cycle_decomposition():
    t0 = time.perf_counter()
    graphs = {"dodecahedron r=6": build_ball(load_fixture("dodecahedron"), 6),
              "K5": complete_graph(5), "3-regular tree": regular_tree_ball(3, 6)}
    results = {name: verify_cycle_decomposition(g, 10) for name, g in graphs.items()}
    tree = results["3-regular tree"]
    tree_ok = (all(a == 0 for a in tree.a_star[1:])
               and list(tree.lhs) == [tree_path_counts(3, 10)(n, 0) for n in range(11)])
    dt = time.perf_counter() - t0
    ok = all(v.passed for v in results.values()) and tree_ok and dt < 120
    verdict(5, "closed-walk decomposition over the tree kernel", ok,
            ", ".join(f"{n}: {'ok' if v.passed else 'mismatch'}" for n, v in results.items()) + f", {dt:.2f} s")


def test_06_gabber_consistency():
    ball = cached_ball("dodecahedron", 6)
    bound = gabber_bound_on_ball(ball, orientation_stats(ball), GabberParams(5, 2, 1))
    C = closed_walk_counts(ball, 10)
    powers = all(c <= Fraction(91, 10) ** n for n, c in enumerate(C))
    verdict(6, "Gabber sums on the dodecahedron", bound.value <= 9.1 and powers,
            f"max interior f_v = {bound.value:.6f}, C_10 = {C[10]}")


def test_07_orientation_invariants():
    failures = []
    for name in fixture_names():
        if not load_fixture(name).flag("hyperbolic_polyhedral"):
            continue
        checks = {c.name: c for c in orientation_checks(small_ball(name))}
        failures += [f"{name}:{n}" for n in ("r_at_most_3", "q3_table") if not checks[n].passed]
    verdict(7, "orientation invariants on every polyhedral fixture", not failures, ", ".join(failures))


def test_08_bracket_inequalities():
    rng = np.random.default_rng(20240601)
    violations = 0
    for _ in range(10_000):
        b = int(rng.integers(0, 13))
        a = int(rng.integers(0, min(b + 1, 12) + 1))
        d = int(rng.integers(0, a + 1))
        t = Fraction(float(rng.uniform(0, 10)))
        violations += not bracket_inequality_holds(a, b, d, t)
    x = 1 / np.linspace(0.01, 1, 1000, endpoint=False)[::-1]
    rows = list(SPHERICAL_TRIANGLE_ROWS.values()) + [dihedral_triangle_row(m) for m in range(2, 13)]
    row_fail = sum(not table_row_inequality(row, Fraction(float(xi))) for row in rows for xi in x)
    verdict(8, "bracket inequality and spherical table rows", violations == 0 and row_fail == 0,
            f"{violations} bracket violations, {row_fail} table-row failures on {len(rows)} rows")


def test_09_growth_lower_bound_grid():
    worst = {}
    for name in fixture_names():
        M = load_fixture(name)
        if M.flag("hyperbolic_polyhedral") and M.rank >= 6:
            worst[name] = growth_lower_bound_check(steinberg_inverse_growth(M)).worst_margin
    ok = bool(worst) and all(w is not None and w >= -1e-12 for w in worst.values())
    verdict(9, "1/W below 1/W_rb on (0, 1]", ok, ", ".join(f"{n}: {w:.3e}" for n, w in worst.items()))


def test_10_gamma_star_algebra():
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(1000):
        k = int(rng.integers(3, 500))
        rho = 2 * math.sqrt(k - 1) * float(rng.uniform(1, 20))
        g = gamma_star_value(rho, k)
        worst = max(worst, abs(g + (k - 1) / g - rho) / rho)
    verdict(10, "gamma* transform identity", worst <= 1e-12, f"worst relative error {worst:.2e}")


def test_11_percolation_harness():
    t0 = time.perf_counter()
    ball = cached_ball("dodecahedron", 4)
    grid = np.linspace(0, 1, 21)
    monotone = endpoints = True
    for seed in range(100):
        res = percolation_sweep(ball, grid, 1, seed=seed)
        monotone &= list(res.hits[0]) == sorted(res.hits[0])
        endpoints &= res.theta_hat[0] == 0 and res.theta_hat[-1] == 1
    same = percolation_sweep(ball, grid, 20, seed=3) == percolation_sweep(ball, grid, 20, seed=3, workers=4)
    dt = time.perf_counter() - t0
    verdict(11, "percolation harness", monotone and endpoints and same and dt < 60,
            f"monotone={monotone}, endpoints={endpoints}, worker-invariant={same}, {dt:.2f} s")


def test_12_tree_green_function():
    worst = 0.0
    for k in (3, 4, 12):
        z = 0.8 / (2 * math.sqrt(k - 1))
        T = tree_path_counts(k, 60)
        for d in (0, 1, 2):
            partial = sum(T(n, d) * z ** n for n in range(61))
            worst = max(worst, abs(partial - tree_green(k, d, z)))
    verdict(12, "tree Green function partial sums", worst <= 1e-6, f"worst error {worst:.2e}")


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
