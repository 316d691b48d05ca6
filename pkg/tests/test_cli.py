import json
import shutil
import subprocess
from pathlib import Path

import pytest

from continuum_lab.cli import main

from helpers import CLI_CASES

DATA = Path(__file__).parent / "data"


def run(capsys, argv):
    code = main(argv)
    out, err = capsys.readouterr()
    return code, out, err


def report(capsys, argv):
    code, out, _ = run(capsys, argv)
    return code, json.loads(out)


@pytest.fixture(autouse=True)
def _cwd(monkeypatch):
    monkeypatch.chdir(DATA.parent.parent)


@pytest.mark.parametrize("argv,want", CLI_CASES, ids=[" ".join(a[:2]) for a, _ in CLI_CASES])
def test_exit_codes(capsys, argv, want):
    code, rep = report(capsys, argv)
    assert code == want == rep["exit_code"]
    assert "error" not in rep
    assert all(v["ok"] for v in rep["verdicts"]) == (want == 0)


def test_crooked_validate_golden(capsys):
    code, rep = report(capsys, ["crooked", "validate"])
    assert code == 0
    assert [v["name"] for v in rep["verdicts"]] == ["separation", "closures_disjoint", "strip",
                                                    "edges", "thresholds"]
    rep.pop("timing")
    assert rep == json.loads((DATA / "golden_crooked_validate.json").read_text())


def test_eval_conn_chain(capsys):
    code, rep = report(capsys, ["eval", "--lattice", "tests/data/chain3.json", "--formula", "conn"])
    assert code == 0 and rep["verdicts"][0]["ok"]
    assert len(rep["inputs"]["lattice"]["sha256"]) == 64


def test_unknown_command(capsys):
    code, out, err = run(capsys, ["nosuchcmd"])
    assert code == 2 and "usage" in err.lower()


def test_schema_error_pointer(capsys):
    code, rep = report(capsys, ["validate-lattice", "tests/data/bad_meet.json"])
    assert code == 2
    assert rep["error"]["pointer"] == "/meet/3"


def test_malformed_json_location(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text('{"dim": 2,\n  "res": }\n')
    code, rep = report(capsys, ["components", "--grid", str(bad)])
    assert code == 2
    assert "line 2, column" in rep["error"]["message"]


def test_grid_input_size(capsys):
    code, rep = report(capsys, ["components", "--grid", "tests/data/grid14.json"])
    assert code == 0
    assert sum(len(c) for c in rep["result"]["components"]) == 196


def test_failed_partition_has_path(capsys):
    code, rep = report(capsys, ["partition-check", "--grid", "tests/data/grid5.json", "--L", "[]",
                                "--A", "tests/data/left_face.json", "--B", "tests/data/right_face.json"])
    assert code == 1
    path = rep["verdicts"][0]["witness"]["path"]
    assert path[0][0] == 0 and path[-1][0] == 4


def test_text_format(capsys):
    code, out, _ = run(capsys, ["crooked", "validate", "--format", "text"])
    lines = out.strip().splitlines()
    assert code == 0
    assert [l.split()[0] for l in lines[:-1]] == ["PASS"] * 5
    assert lines[-1] == "crooked validate: exit 0"


def test_out_file(capsys, tmp_path):
    target = tmp_path / "r.json"
    code, out, _ = run(capsys, ["cover-degree", "--dim", "3", "--out", str(target)])
    assert code == 0 and out == ""
    rep = json.loads(target.read_text())
    assert rep["result"]["max_degree"] == 26


def test_model_search_expect_model_fails_when_none(capsys):
    code, rep = report(capsys, ["model-search", "--theory", "tests/data/theory_no_model.theory",
                                "--size", "4"])
    assert code == 1


def test_report_digest_ignores_timing(capsys):
    _, a = report(capsys, ["cover-degree", "--dim", "2"])
    _, b = report(capsys, ["cover-degree", "--dim", "2"])
    assert a["report_sha256"] == b["report_sha256"]
    assert list(a)[-1] == "timing"


@pytest.mark.skipif(shutil.which("continuum-lab") is None, reason="console script not installed")
def test_console_script():
    p = subprocess.run(["continuum-lab", "crooked", "validate", "--format", "text"],
                       capture_output=True, text=True, cwd=DATA.parent.parent)
    assert p.returncode == 0 and "PASS separation" in p.stdout
