import itertools

import pytest

from coxperc.coxeter import INF, CoxeterMatrix, is_spherical
from coxperc.fixtures import load_fixture
from coxperc.nerve import build_nerve, classify_nerve, validate_right_angled_compact
from conftest import POLYHEDRAL


def _inf_matrix(k):
    return CoxeterMatrix.from_rows([[1 if i == j else INF for j in range(k)] for i in range(k)])


def test_isolated_vertices():
    N = build_nerve(_inf_matrix(5))
    assert (N.f0, N.f1, N.f2) == (5, 0, 0)
    R = classify_nerve(N)
    assert R.is_flag and not R.is_sphere_triangulation


def test_dodecahedron_nerve(dodecahedron):
    N = build_nerve(dodecahedron)
    assert (N.f0, N.f1, N.f2) == (12, 30, 20)
    R = classify_nerve(N)
    assert R.is_flag and not R.has_3_simplex and R.is_sphere_triangulation
    assert R.max_vertex_degree == 5
    assert R.euler_characteristic == 2


def test_single_triangle():
    M = CoxeterMatrix.from_rows([[1, 2, 3], [2, 1, 5], [3, 5, 1]])
    N = build_nerve(M)
    assert N.simplices[2] == ((0, 1, 2),)
    assert (N.f0, N.f1, N.f2) == (3, 3, 1)


def test_three_simplex():
    M = CoxeterMatrix.from_rows([[1 if i == j else 2 for j in range(4)] for i in range(4)])
    R = classify_nerve(build_nerve(M))
    assert R.has_3_simplex


def test_rank_five_simplex_enumerated():
    M = CoxeterMatrix.from_rows([[1 if i == j else 2 for j in range(5)] for i in range(5)])
    N = build_nerve(M)
    assert N.dimension == 4
    assert len(N.simplices[3]) == 5


def test_non_flag_detected():
    # three pairwise-finite generators whose triple is hyperbolic (orders 3,3,4)
    M = CoxeterMatrix.from_rows([[1, 3, 3], [3, 1, 4], [3, 4, 1]])
    R = classify_nerve(build_nerve(M))
    assert not R.is_flag and sorted(R.flag_witness) == [0, 1, 2]


@pytest.mark.parametrize("name", POLYHEDRAL)
def test_nerve_invariants(name):
    M = load_fixture(name)
    N = build_nerve(M)
    R = classify_nerve(N)
    assert N.f0 == M.rank
    assert not R.has_3_simplex
    for s, t in N.simplices[1]:
        assert M.m(s, t) != INF
    # downward closure and agreement with the sphericity test
    for d, simplices in N.simplices.items():
        for simplex in simplices:
            assert is_spherical(M, simplex)
            for face in itertools.combinations(simplex, d):
                if face:
                    assert tuple(face) in N.simplices[d - 1]
    n_triples = sum(is_spherical(M, T) for T in itertools.combinations(range(M.rank), 3))
    assert n_triples == N.f2
    if R.is_sphere_triangulation:
        assert 2 * N.f1 == 3 * N.f2
        assert N.f1 == 3 * (M.rank - 2) and N.f2 == 2 * (M.rank - 2)
        assert N.f0 - N.f1 + N.f2 == 2


@pytest.mark.parametrize("name", ["dodecahedron", "truncated_icosahedron"])
def test_right_angled_compact_checks_pass(name):
    M = load_fixture(name)
    checks = validate_right_angled_compact(M, classify_nerve(build_nerve(M)))
    assert [c.name for c in checks] == ["finite_orders_are_2", "flag_sphere_triangulation",
                                        "max_degree_bound", "at_least_12_faces"]
    assert all(c.passed for c in checks)


def test_order_three_fails_first_check(dodecahedron):
    rows = [list(r) for r in dodecahedron.orders]
    rows[0][1] = rows[1][0] = 3
    M = CoxeterMatrix.from_rows(rows, {"compact": True})
    checks = validate_right_angled_compact(M, classify_nerve(build_nerve(M)))
    first = checks[0]
    assert not first.passed and first.witness == [0, 1]


def test_prism_fails_degree_and_size():
    # pentagonal prism: faces 0..4 around, 5 and 6 the two caps
    rows = [[1 if i == j else INF for j in range(7)] for i in range(7)]
    for i in range(5):
        for j in ((i + 1) % 5, 5, 6):
            rows[i][j] = rows[j][i] = 2
    M = CoxeterMatrix.from_rows(rows, {"right_angled": True, "compact": True})
    checks = {c.name: c for c in validate_right_angled_compact(M, classify_nerve(build_nerve(M)))}
    assert not checks["max_degree_bound"].passed
    assert not checks["at_least_12_faces"].passed
