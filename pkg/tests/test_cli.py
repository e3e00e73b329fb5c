import json

import pytest

from k3lattice import jsonio
from k3lattice.cli import main, run
from k3lattice.lattice import LatticeError

from golden_cases import CASES, GOLDEN, PARALLEL, check_case, expected_path, run_cli


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name):
    assert check_case(name, runs=2) == []


@pytest.mark.parametrize("name", sorted(PARALLEL))
def test_golden_is_independent_of_workers(name):
    assert check_case(name, workers=(None, 1, 2, 4)) == []


def result_of(name):
    return json.loads(expected_path(name).read_text())["result"]


def test_documented_examples():
    assert result_of("orders_feasible_60") == {"feasible": False}
    assert result_of("orders_feasible_66") == {"feasible": True}
    assert result_of("lattice_info_LK3") == {"rank": 22, "signature": [3, 19], "det": -1,
                                             "even": True, "unimodular": True}
    assert result_of("lattice_roots_E8") == {"count": 240}
    assert result_of("lattice_roots_A2")["count"] == 6
    assert result_of("lattice_info_Hx3_env")["det"] == -9
    assert result_of("monodromy_type3")["counts"] == {"triple_points": 2}
    assert result_of("monodromy_type2_imprimitive")["J"] == [[1, 0, 0, 0], [0, 0, 1, 0]]
    assert result_of("cusps_order5")["cusps"] == []
    planted = result_of("cusps_planted")
    assert planted["admissible_count"] == 1
    assert planted["cusps"][0]["j_invariant_class"] == "j=0"


def test_report_shape():
    report, code = run(["orders", "feasible", "60"])
    assert code == 0
    assert set(report) == {"command", "input_digest", "result", "status", "warnings",
                           "exit_status"}
    assert report["command"] == "orders feasible" and report["status"] == "ok"
    report, code = run(["cusps", "scan", "--input", str(GOLDEN / "inputs/isometry_order5.json"),
                        "--bound", "2"])
    assert report["warnings"][0]["code"] == "bounded_scan"
    assert report["warnings"][0]["bound"] == 2


def test_digest_tracks_inputs_not_paths():
    a, _ = run(["orders", "feasible", "60"])
    b, _ = run(["orders", "feasible", "066"])
    c, _ = run(["orders", "feasible", "66"])
    assert a["input_digest"] != c["input_digest"]
    assert b["input_digest"] == c["input_digest"]
    x, _ = run(["lattice", "roots", "--name", "E8", "--workers", "3"])
    y, _ = run(["lattice", "roots", "--name", "E8"])
    assert x == y


def test_no_floats_in_output():
    for name in CASES:
        text = expected_path(name).read_text()

        def walk(v):
            assert not isinstance(v, float), name
            if isinstance(v, dict):
                for w in v.values():
                    walk(w)
            elif isinstance(v, list):
                for w in v:
                    walk(w)
        walk(json.loads(text))


def test_errors_are_structured(capsys):
    code = main(["lattice", "info"])
    out = json.loads(capsys.readouterr().out)
    assert code == 2 and out["error"]["kind"] == "input" and out["exit_status"] == 2
    code = main(["orders", "feasible", "1"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1 and out["error"]["kind"] == "domain"
    code = main(["orders", "feasible", "six"])
    assert code == 2
    capsys.readouterr()
    code = main(["lattice", "roots", "--name", "H"])
    out = json.loads(capsys.readouterr().out)
    assert code == 1 and "definite" in out["error"]["message"]


def test_catalog_resolution(tmp_path, monkeypatch):
    cat = jsonio.Catalog()
    assert [list(r) for r in cat.lookup("H").gram] == [[0, 1], [1, 0]]
    with pytest.raises(LatticeError):
        cat.lookup("nope")
    with pytest.raises(LatticeError):
        cat.add("LK3", "H")
    cat.add("Hx3", {"rescale": {"lattice": "H", "by": 3}})
    assert cat.lookup("Hx3").gram == ((0, 3), (3, 0))
    cat.add("loop", "loop")
    with pytest.raises(jsonio.InputError):
        cat.lookup("loop")
    path = tmp_path / "cat.json"
    path.write_text(json.dumps({"Big": {"sum": ["Hx3", "E8"]},
                                "Hx3": {"rescale": {"lattice": "H", "by": 3}}}))
    monkeypatch.setenv(jsonio.CATALOG_ENV, str(path))
    assert jsonio.load_catalog().lookup("Big").rank == 10
    report, code = run(["lattice", "info", "--name", "Big"])
    assert code == 0 and report["result"]["det"] == -9
    path.write_text("[1, 2]")
    report, code = run(["lattice", "info", "--name", "H"])
    assert code == 2


def test_parsers_reject_bad_values():
    cat = jsonio.Catalog()
    with pytest.raises(jsonio.InputError):
        jsonio.as_int(True)
    with pytest.raises(jsonio.InputError):
        jsonio.as_int(1.5)
    assert jsonio.as_int(2.0) == 2 and jsonio.as_int("-7") == -7
    with pytest.raises(jsonio.InputError):
        jsonio.as_matrix([[1, 2], [3]])
    with pytest.raises(jsonio.InputError):
        cat.resolve({"gram": [[0, 1], [1, 0]], "rank": 3})
    with pytest.raises(jsonio.InputError):
        jsonio.parse_kulikov({"lattice": "H", "delta": [1, 0]}, cat)
    with pytest.raises(jsonio.InputError):
        jsonio.parse_semifan({"lattice": "H", "entries": [], "mode": "sideways"}, cat)


def test_subprocess_never_prints_traceback():
    rc, out = run_cli(["isometry", "analyze", "--input", "inputs/not_json.json"])
    assert rc == 2 and b"Traceback" not in out
    json.loads(out)
