import json
import subprocess
import sys

import pytest

from spectrakit import catalog
from spectrakit.cli import EXIT_FAIL, EXIT_INPUT, EXIT_OK, EXIT_STALL, main

CUBIC = catalog.CUBIC


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def run_json(capsys, *argv):
    code, out, err = run(capsys, *argv)
    return code, json.loads(out), err


@pytest.fixture
def files(tmp_path):
    def write(name, data):
        path = tmp_path / name
        path.write_text(json.dumps(data))
        return str(path)

    return {
        "triple": write("triple.json", {"generators": list(catalog.CUSP_TRIPLE_GENERATORS), "d": 3,
                                        "queries": [{"type": "qm", "ell": "t2 - 3/4*t1 + 1/4"}]}),
        "corner": write("corner.json", {"generators": list(catalog.CORNER_SET_GENERATORS), "d": 3,
                                        "queries": [{"type": "point", "x": ["0", "0"]}]}),
        "corner_set": write("corner_set.json", {"generators": list(catalog.CORNER_SET_GENERATORS),
                                                "interior_point": ["-1/2", "1/2"],
                                                "bbox": [[-1.5, 1.5], [-1.5, 1.5]]}),
        "pencil": write("pencil.json", catalog.CUBIC_PENCIL.to_json()),
        "broken": str(tmp_path / "missing.json"),
        "bad_schema": write("bad.json", {"generators": ["t1"], "queries": []}),
    }


class TestRZ:
    @pytest.mark.parametrize("poly, expected", [(CUBIC, True), ("t1^2 + t2^2 + 1", False), ("1 - t1", True)])
    def test_examples(self, capsys, poly, expected):
        code, rep, _ = run_json(capsys, "rz", "--poly", poly, "--e", "0,0")
        assert code == EXIT_OK and rep["overall"] is expected and rep["schema"] == 1

    def test_parse_error_has_position(self, capsys):
        code, _, err = run(capsys, "rz", "--poly", "t1^^2")
        assert code == EXIT_INPUT and "position 3" in err

    def test_output_file(self, capsys, tmp_path):
        out = tmp_path / "rz.json"
        run(capsys, "rz", "--poly", CUBIC, "--out", str(out))
        assert json.loads(out.read_text())["overall"] is True


class TestSymbolic:
    def test_renegar(self, capsys):
        _, rep, _ = run_json(capsys, "renegar", "--poly", CUBIC, "--k", "1")
        assert rep["derivative"] == "-t1^2 - t2^2 - 2*t1 + 3"

    def test_mult_and_tangent(self, capsys):
        _, rep, _ = run_json(capsys, "mult", "--poly", CUBIC, "--x", "1,0", "--tangent")
        assert rep["mult"] == 2 and rep["tangent_line"] == "{t1 = 1}"

    def test_hypcone(self, capsys):
        _, rep, _ = run_json(capsys, "hypcone", "--poly", CUBIC, "--x", "2,0,1")
        assert rep["member"] is False
        _, rep, _ = run_json(capsys, "hypcone", "--poly", "t1^3 - t1^2*u - t1*u^2 - t2^2*u + u^3", "--x=-1,0,1")
        assert rep["member"] is True

    def test_pencil(self, capsys, files):
        _, rep, _ = run_json(capsys, "pencil", "charpoly", "--file", files["pencil"])
        assert rep["coefficients"][2] == "-3*t1 + 4"
        _, rep, _ = run_json(capsys, "pencil", "face", "--file", files["pencil"], "--x", "1,0")
        assert len(rep["face"]["kernel"]) == 2 and rep["exposing_functional"] is not None
        code, _, _ = run(capsys, "pencil", "face", "--file", files["pencil"], "--x", "2,0")
        assert code == EXIT_INPUT

    def test_missing_file(self, capsys, files):
        code, _, err = run(capsys, "pencil", "member", "--file", files["broken"], "--x", "0,0")
        assert code == EXIT_INPUT and "cannot read" in err


class TestLasserre:
    def test_qm_member(self, capsys, files):
        code, rep, _ = run_json(capsys, "lasserre", "qm-member", files["triple"])
        assert code == EXIT_OK and rep["results"][0]["verdict"] == "CERTIFIED"
        assert rep["results"][0]["certificate"]["gram"]

    def test_relax_member(self, capsys, files):
        code, rep, _ = run_json(capsys, "lasserre", "relax-member", files["corner"])
        assert code == EXIT_OK and rep["results"][0]["verdict"] == "IN"

    def test_probe(self, capsys, files):
        code, rep, _ = run_json(capsys, "lasserre", "probe", files["corner"])
        assert code == EXIT_OK and rep["a_star"] == "1/4"
        assert rep["attempts"][-1]["verdict"] == "REFUTED"

    def test_schema_violation(self, capsys, files):
        code, _, _ = run(capsys, "lasserre", "qm-member", files["bad_schema"])
        assert code == EXIT_INPUT

    def test_stall_exit_code(self, capsys, files):
        code, rep, err = run_json(capsys, "lasserre", "qm-member", files["triple"], "--max-iter", "1")
        assert code == EXIT_STALL and "warning" in err and rep["warnings"]

    def test_degree_violation(self, capsys, tmp_path):
        path = tmp_path / "deg.json"
        path.write_text(json.dumps({"generators": ["t1"], "d": 1, "queries": [{"type": "qm", "ell": "t1^2"}]}))
        code, _, _ = run(capsys, "lasserre", "qm-member", str(path))
        assert code == EXIT_INPUT


class TestFaces2D:
    def test_corner(self, capsys, files):
        _, rep, _ = run_json(capsys, "faces2d", "--set", files["corner_set"], "--x", "0,0")
        assert rep["exposed"] is False and rep["contact"]["kind"] == "segment"

    def test_outside(self, capsys, files):
        code, _, _ = run(capsys, "faces2d", "--set", files["corner_set"], "--x", "5,5")
        assert code == EXIT_INPUT


def test_usage_error_is_input_error(capsys):
    with pytest.raises(SystemExit) as info:
        main(["rz"])
    assert info.value.code == EXIT_INPUT


class TestReproduce:
    def test_partial_symbolic_run(self, capsys, tmp_path):
        out = tmp_path / "report"
        code, _, err = run(capsys, "reproduce-paper", "--skip", "sdp,c2,c3,c9", "--out", str(out))
        assert code == EXIT_OK
        rep = json.loads((out / "report.json").read_text())
        assert rep["schema"] == 1 and rep["partial"] is True
        assert sorted(rep["checks"]) == ["c1", "c4", "c6"]
        assert "runtime_s" not in json.dumps(rep)
        assert (out / "cubic_set.svg").exists() and (out / "corner_set.svg").exists()
        assert "[PASS] c1" in err

    def test_failed_check_sets_exit_code(self, capsys, tmp_path):
        code, _, _ = run(capsys, "reproduce-paper", "--skip", "sdp,figures,c3,c4,c6,c9", "--out", str(tmp_path))
        rep = json.loads((tmp_path / "report.json").read_text())
        # the stated p^(2) disagrees with the computed chain, so c2 fails
        assert rep["checks"]["c2"]["pass"] is False
        assert rep["overall"] is False and code == EXIT_FAIL

    def test_absurd_tolerance_warns(self, capsys, tmp_path):
        code, _, err = run(capsys, "reproduce-paper", "--feas-tol", "10", "--skip", "sdp,figures,c3,c4,c6,c9",
                           "--out", str(tmp_path))
        assert "warning: feas-tol" in err
        assert json.loads((tmp_path / "report.json").read_text())["warnings"]

    def test_report_is_deterministic(self, capsys, tmp_path):
        args = ["reproduce-paper", "--skip", "sdp,figures,c3,c9"]
        run(capsys, *args, "--out", str(tmp_path / "a"))
        run(capsys, *args, "--out", str(tmp_path / "b"))
        assert (tmp_path / "a" / "report.json").read_bytes() == (tmp_path / "b" / "report.json").read_bytes()

    def test_unknown_skip(self, capsys, tmp_path):
        code, _, _ = run(capsys, "reproduce-paper", "--skip", "c99", "--out", str(tmp_path))
        assert code == EXIT_INPUT


def test_figures_are_deterministic(capsys, tmp_path):
    run(capsys, "fig", "--out", str(tmp_path / "a"))
    run(capsys, "fig", "--out", str(tmp_path / "b"))
    for name in ("cubic_set.svg", "corner_set.svg"):
        a = (tmp_path / "a" / name).read_bytes()
        assert a == (tmp_path / "b" / name).read_bytes() and a.startswith(b"<?xml")


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "spectrakit", "rz", "--poly", "1 - t1", "--e", "0,0"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and json.loads(proc.stdout)["overall"] is True
