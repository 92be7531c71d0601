import json

import pytest

from coxperc.cli import main
from coxperc.coxeter import INF, CoxeterMatrix
from coxperc.fixtures import load_fixture
from coxperc.report import ReportOptions, choose_radius, run_report, to_jsonable


@pytest.fixture(scope="module")
def dodeca_report():
    return run_report(load_fixture("dodecahedron"), ReportOptions(oracle_radius=5, n_max=8))


def test_report_dodecahedron(dodeca_report):
    doc = dodeca_report.document
    assert dodeca_report.exit_code == 0
    assert doc["schema_version"] == "1.0"
    assert doc["certificate"]["verdict"] == "certified"
    assert doc["nerve"]["counts"]["f0"] == 12
    assert doc["growth"]["sphere_sizes"][:3] == [1, 12, 102]
    o = doc["oracles"]
    assert o["all_passed"] and o["radius"] == 5 and o["n_max"] == 8
    assert set(o["checks"]["gabber"]) == {"basic", "general", "ra_compact"}
    json.dumps(to_jsonable(doc))


def test_report_without_oracles():
    rep = run_report(load_fixture("dodecahedron_mixed"), ReportOptions(oracles=False))
    assert rep.exit_code == 0 and "oracles" not in rep.document


def test_report_with_percolation():
    rep = run_report(load_fixture("dodecahedron"), ReportOptions(oracles=False, percolation=True, samples=3,
                                                                 p_grid=(0.0, 1.0), percolation_radius=2))
    rows = rep.document["percolation"]["rows"]
    assert [r["theta_hat"] for r in rows] == [0.0, 1.0]


def test_report_certificate_error():
    rows = [[1 if i == j else INF for j in range(7)] for i in range(7)]
    for i in range(5):
        for j in ((i + 1) % 5, 5, 6):
            rows[i][j] = rows[j][i] = 2
    M = CoxeterMatrix.from_rows(rows, {"right_angled": True, "compact": True, "hyperbolic_polyhedral": True})
    rep = run_report(M, ReportOptions(oracles=False))
    assert rep.exit_code == 2
    assert "validation failed" in rep.document["certificate"]["error"]


def test_choose_radius():
    assert choose_radius(None, 10 ** 6) == 3
    assert choose_radius([1, 13, 115, 847, 5647, 35589, 216859, 1300000], 10 ** 6) == 6
    assert choose_radius([1, 13, 115, 847, 5647, 35589, 216859], 10_000) == 4


def test_to_jsonable():
    import numpy as np
    assert to_jsonable({"a": np.int64(3), "b": (float("inf"), 1.5)}) == {"a": 3, "b": ["inf", 1.5]}


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_cli_table(capsys):
    code, out, _ = run(capsys, "table", "--json")
    assert code == 0
    assert json.loads(out)["table"]["general"] == {"rho": 15, "gamma_star": 13}
    code, out, _ = run(capsys, "table", "--csv")
    assert out.splitlines() == ["lemma,rho,gamma_star", "basic,18,15", "general,15,13", "ra_compact,15,12"]


def test_cli_growth(capsys):
    code, out, _ = run(capsys, "growth", "dodecahedron", "--coeffs", "3", "--csv")
    assert code == 0 and out.splitlines()[1:3] == ["0,1,1", "1,12,13"]
    code, out, _ = run(capsys, "growth", "dodecahedron", "--json")
    assert json.loads(out)["growth"]["growth_rate"]["growth_rate"] == pytest.approx(7.872983346, abs=1e-9)


def test_cli_certify(capsys):
    code, out, _ = run(capsys, "certify", "dodecahedron")
    assert code == 0 and "verdict: certified" in out
    code, _, err = run(capsys, "certify", "tetrahedron_353")
    assert code == 2 and "k = 4" in err


def test_cli_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "dodecahedron", "--c1", "5", "--c2", "2", "--c3", "1", "--radius", "3",
                       "--json")
    doc = json.loads(out)
    assert code == 0 and doc["observed"]["value"] <= 9.1
    code, _, err = run(capsys, "bounds", "dodecahedron", "--c1", "5")
    assert code == 1


def test_cli_oracle_and_analyze(capsys):
    code, out, _ = run(capsys, "oracle", "dodecahedron", "--radius", "4", "--nmax", "6")
    assert code == 0 and "all checks passed" in out
    code, out, _ = run(capsys, "analyze", "dodecahedron", "--no-oracles")
    assert code == 0 and "certificate: certified" in out


def test_cli_simulate(capsys, tmp_path):
    code, out, _ = run(capsys, "simulate", "dodecahedron", "--p-grid", "0:1:3", "--samples", "2", "--radius", "2",
                       "--csv")
    assert code == 0 and out.splitlines()[-1] == "1.0,1.0,1.0,2"


def test_cli_input_file(capsys, tmp_path):
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"orders": [[1, 3], [3, 1]]}))
    code, out, _ = run(capsys, "growth", str(path), "--coeffs", "4", "--csv")
    assert code == 0 and [l.split(",")[1] for l in out.splitlines()[1:]] == ["1", "2", "2", "1", "0"]


def test_cli_exit_codes(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert run(capsys, "growth", str(bad))[0] == 1
    assert run(capsys, "growth", "no_such_input")[0] == 1
    with pytest.raises(SystemExit) as exc:
        main(["nonsense"])
    assert exc.value.code == 1
    capsys.readouterr()
    asym = tmp_path / "asym.json"
    asym.write_text(json.dumps({"orders": [[1, 3], [4, 1]]}))
    assert run(capsys, "growth", str(asym))[0] == 2
    assert run(capsys, "simulate", "dodecahedron", "--p-grid", "0:1:2", "--radius", "6",
               "--max-ball-size", "1000")[0] == 3
