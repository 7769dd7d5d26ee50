"""End-to-end checks of the command line front end (in-process)."""

import json
import subprocess
import sys

import numpy as np
import pytest

from graph_hardy import (
    Graph,
    HardyPoly,
    SystemMatrix,
    central_to_dict,
    evaluate_poly,
    graph_to_dict,
    load_system,
    make_central_point,
    make_dual_point,
    mobius_apply,
    point_to_dict,
    poly_to_terms,
    system_to_dict,
    transfer_eval,
    two_vertex_example,
)
from graph_hardy.cli import main


def write_json(path, obj):
    path.write_text(json.dumps(obj))
    return str(path)


@pytest.fixture
def graph_file(tmp_path):
    return write_json(tmp_path / "graph.json", graph_to_dict(two_vertex_example()))


@pytest.fixture
def loop_file(tmp_path):
    g = Graph(["u"], [("z", "u", "u")])
    return write_json(tmp_path / "loop.json", graph_to_dict(g))


def run_cli(capsys, argv):
    code = main(argv)
    captured = capsys.readouterr()
    report = json.loads(captured.out) if captured.out.strip() else None
    return code, report, captured.err


def test_validate_graph(capsys, graph_file):
    code, rep, _ = run_cli(capsys, ["validate-graph", "--graph", graph_file])
    assert code == 0
    assert rep["passed"]
    assert rep["vertices"] == ["v", "w"]
    assert rep["loops"] == ["g"]
    assert rep["is_full"] and rep["left_faithful"]
    assert len(rep["inputs"]["graph"]["sha256"]) == 64


def test_validate_graph_bad_inputs(capsys, tmp_path):
    code, _, err = run_cli(capsys, ["validate-graph", "--graph",
                                    str(tmp_path / "missing.json")])
    assert code == 2 and "input error" in err
    bad = tmp_path / "bad.json"
    bad.write_text("{not json")
    assert main(["validate-graph", "--graph", str(bad)]) == 2
    capsys.readouterr()
    dangling = write_json(tmp_path / "dangling.json", {
        "vertices": ["v"], "edges": [{"name": "e", "src": "v", "dst": "x"}]})
    assert main(["validate-graph", "--graph", dangling]) == 2
    capsys.readouterr()


def test_report_determinism(tmp_path, graph_file, capsys):
    out1, out2 = tmp_path / "r1.json", tmp_path / "r2.json"
    assert main(["validate-graph", "--graph", graph_file, "--out", str(out1)]) == 0
    assert main(["validate-graph", "--graph", graph_file, "--out", str(out2)]) == 0
    capsys.readouterr()
    assert out1.read_bytes() == out2.read_bytes()


def test_fock_check(capsys, graph_file):
    code, rep, _ = run_cli(capsys, ["fock-check", "--graph", graph_file])
    assert code == 0
    assert rep["passed"]
    assert rep["worst_residual"] == 0.0
    assert rep["N"] == 4
    # truncation too short for any relation to survive compression
    code, _, err = run_cli(capsys, ["fock-check", "--graph", graph_file, "--N", "1"])
    assert code == 2 and "input error" in err


def test_eval_direct_frozen(capsys, tmp_path, graph_file):
    g = two_vertex_example()
    x = HardyPoly(g, {"v": 2.0, ("e",): 3.0, ("f", "g"): 5.0})
    polyf = write_json(tmp_path / "poly.json", poly_to_terms(x))
    pt = make_dual_point(g, {"e": 0.2 + 0.1j, "f": -0.3, "g": 0.4j})
    ptf = write_json(tmp_path / "pt.json", point_to_dict(pt))
    code, rep, _ = run_cli(capsys, ["eval", "--graph", graph_file,
                                    "--poly", polyf, "--point", ptf])
    assert code == 0
    assert rep["mode"] == "direct"
    got = np.array([[complex(a, b) for a, b in row] for row in rep["value"]])
    np.testing.assert_allclose(got, np.array([[2.0, 0.6j], [0.6 - 0.3j, 0.0]]),
                               atol=1e-12)


def test_eval_pullback(capsys, tmp_path, graph_file):
    g = two_vertex_example()
    x = HardyPoly(g, {"v": 0.5, ("e",): 1.0, ("g",): -0.5})
    polyf = write_json(tmp_path / "poly.json", poly_to_terms(x))
    pt = make_dual_point(g, {"e": 0.3, "f": -0.2, "g": 0.1 + 0.2j})
    ptf = write_json(tmp_path / "pt.json", point_to_dict(pt))
    gamma = make_central_point(g, {"g": 0.35})
    gf = write_json(tmp_path / "gamma.json", central_to_dict(gamma))
    code, rep, _ = run_cli(capsys, ["eval", "--graph", graph_file, "--poly", polyf,
                                    "--point", ptf, "--gamma", gf])
    assert code == 0
    assert rep["mode"] == "pullback"
    got = np.array([[complex(a, b) for a, b in row] for row in rep["value"]])
    expected = evaluate_poly(x, mobius_apply(gamma, pt))
    np.testing.assert_allclose(got, expected, atol=1e-12)


def pick_payload(z, c):
    return {
        "points": [{"weights": {"z": [w.real, w.imag]}} for w in np.conj(z)],
        "C": [[[[ci.real, ci.imag]]] for ci in c],
    }


def test_pick_feasible_and_not(capsys, tmp_path, loop_file):
    z = np.array([0.3, 0.2 - 0.5j])
    c = 0.6 * z
    good = write_json(tmp_path / "good.json", pick_payload(z, c))
    code, rep, _ = run_cli(capsys, ["pick", "--graph", loop_file, "--points", good])
    assert code == 0
    assert rep["feasible"] and rep["passed"]
    z2 = np.array([0.05, 0.1])
    c2 = np.array([0.95, -0.95])
    bad = write_json(tmp_path / "bad.json", pick_payload(z2, c2))
    code, rep, _ = run_cli(capsys, ["pick", "--graph", loop_file, "--points", bad])
    assert code == 1
    assert not rep["feasible"]
    assert rep["worst_residual"] > 1e-3


def test_pick_rejects_boundary_point(capsys, tmp_path, loop_file):
    payload = {"points": [{"weights": {"z": [1.0, 0.0]}}], "C": [[[[0.5, 0.0]]]]}
    f = write_json(tmp_path / "bdry.json", payload)
    code, _, err = run_cli(capsys, ["pick", "--graph", loop_file, "--points", f])
    assert code == 2 and "input error" in err


def test_schur_check(capsys, tmp_path, loop_file):
    pts = [{"weights": {"z": [0.4, 0.0]}}, {"weights": {"z": [-0.1, 0.3]}}]
    ok = write_json(tmp_path / "ok.json",
                    {"points": pts, "values": [[[[0.5, 0.0]]], [[[0.5, 0.0]]]]})
    code, rep, _ = run_cli(capsys, ["schur-check", "--graph", loop_file, "--points", ok])
    assert code == 0 and rep["passed"]
    bad = write_json(tmp_path / "toarge.json",
                     {"points": pts, "values": [[[[1.5, 0.0]]], [[[0.5, 0.0]]]]})
    code, rep, _ = run_cli(capsys, ["schur-check", "--graph", loop_file, "--points", bad])
    assert code == 1 and not rep["passed"]


def test_transfer(capsys, tmp_path, loop_file):
    g = Graph(["u"], [("z", "u", "u")])
    s = SystemMatrix(g, {"u": 1}, ("u",), ("u",), A={"u": 0.6},
                     B={"u": np.array([[0.8]])}, C={"z": np.array([[0.8]])},
                     D={"z": np.array([[-0.6]])})
    sysf = write_json(tmp_path / "sys.json", system_to_dict(s))
    pt = make_dual_point(g, {"z": 0.3})
    ptf = write_json(tmp_path / "pt.json", point_to_dict(pt))
    code, rep, _ = run_cli(capsys, ["transfer", "--graph", loop_file,
                                    "--system", sysf, "--point", ptf])
    assert code == 0
    assert rep["passed"] and rep["validation"]["passed"]
    got = complex(*rep["value"][0][0])
    expected = transfer_eval(s, pt)[0, 0]
    assert abs(got - expected) < 1e-13
    assert rep["series_residual"] <= rep["tail_bound"] + 1e-12


def test_realize_roundtrip(capsys, tmp_path, loop_file):
    # identity function samples on the loop disc realize exactly
    payload = {
        "points": [{"weights": {"z": [0.0, 0.0]}}, {"weights": {"z": [0.5, 0.0]}}],
        "values": [[[[0.0, 0.0]]], [[[0.5, 0.0]]]],
        "q1": ["u"], "q2": ["u"],
    }
    f = write_json(tmp_path / "samples.json", payload)
    sysout = tmp_path / "system.json"
    code, rep, _ = run_cli(capsys, ["realize", "--graph", loop_file, "--points", f,
                                    "--out", str(sysout)])
    assert code == 0
    assert rep["passed"]
    assert rep["interpolation_residual"] < 1e-10
    assert rep["system_written_to"] == str(sysout)
    g = Graph(["u"], [("z", "u", "u")])
    s = load_system(g, str(sysout))
    held = make_dual_point(g, {"z": 0.25})
    assert abs(transfer_eval(s, held)[0, 0] - np.conj(0.25)) < 1e-10


def test_realize_infeasible_exit_code(capsys, tmp_path, loop_file):
    payload = {
        "points": [{"weights": {"z": [0.8, 0.0]}}],
        "values": [[[[1.2, 0.0]]]],
        "q1": ["u"], "q2": ["u"],
    }
    f = write_json(tmp_path / "exp.json", payload)
    code, rep, _ = run_cli(capsys, ["realize", "--graph", loop_file, "--points", f])
    assert code == 1
    assert rep["kind"] == "infeasible"
    assert not rep["passed"]


def test_mobius_command(capsys, tmp_path, graph_file):
    g = two_vertex_example()
    gamma = make_central_point(g, {"g": 0.3 - 0.4j})
    gf = write_json(tmp_path / "gamma.json", central_to_dict(gamma))
    pt = make_dual_point(g, {"e": 0.2, "f": 0.4j, "g": -0.3})
    ptf = write_json(tmp_path / "pt.json", point_to_dict(pt))
    code, rep, _ = run_cli(capsys, ["mobius", "--graph", graph_file, "--gamma", gf,
                                    "--point", ptf])
    assert code == 0
    assert rep["passed"]
    assert rep["worst_residual"] < 1e-9
    assert rep["involution_residual"] < 1e-12
    assert rep["image_norm"] < 1.0


def test_autom_demo(capsys):
    code, rep, _ = run_cli(capsys, ["autom-demo"])
    assert code == 0
    assert rep["passed"]
    assert rep["worst_residual"] < 1e-7
    assert rep["kernel_ideal"]["passed"]


def test_module_and_script_entry_points(tmp_path):
    gfile = tmp_path / "g.json"
    gfile.write_text(json.dumps(graph_to_dict(two_vertex_example())))
    r = subprocess.run([sys.executable, "-m", "graph_hardy.cli", "validate-graph",
                        "--graph", str(gfile)], capture_output=True, text=True)
    assert r.returncode == 0
    assert json.loads(r.stdout)["passed"]
    r = subprocess.run(["graph-hardy", "fock-check", "--graph", str(gfile),
                        "--N", "3"], capture_output=True, text=True)
    assert r.returncode == 0
