"""CLI behaviour: golden outputs and exit statuses."""

import json
import os
from pathlib import Path

import pytest

from abmodules.cli import main

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"

# (golden name, argv, expected exit status)
CASES = [
    ("check_hyp", ["check", "hyp_half.txt"], 0),
    ("jh_ext", ["jh", "ext_third.txt"], 0),
    ("jh_ext_json", ["--format", "json", "jh", "ext_third.txt"], 0),
    ("classify_ext", ["classify", "ext_third.txt"], 0),
    ("adjoint_ext", ["adjoint", "ext_third.txt"], 0),
    ("find_form_sat", ["find-form", "sat_ext10.txt"], 0),
    ("sajh_hyp", ["sajh", "hyp_half.txt"], 0),
    ("sajh_search", ["sajh", "sat_ext10.txt"], 0),
    ("sajh_general", ["sajh-general", "blocks.txt", "--verify"], 0),
    ("sajh_case4", ["sajh", "case4.txt"], 2),
]


def _argv(argv):
    return [str(DATA / a) if a.endswith(".txt") else a for a in argv]


@pytest.mark.parametrize("name,argv,status", CASES, ids=[c[0] for c in CASES])
def test_golden(name, argv, status, capsys):
    assert main(_argv(argv)) == status
    captured = capsys.readouterr()
    out = captured.out
    if status == 2:
        assert "negative:" in captured.err
    path = GOLDEN / f"{name}.out"
    if os.environ.get("ABMODULES_REGEN_GOLDEN"):
        path.write_text(out)
    assert out == path.read_text()


def test_global_flags_after_subcommand(capsys):
    assert main(["jh", str(DATA / "ext_third.txt"), "--format", "json"]) == 0
    assert json.loads(capsys.readouterr().out)["params"] == ["1/3", "0"]


def test_exit_statuses(capsys, tmp_path):
    assert main(["jh", str(DATA / "bad_rows.txt")]) == 1
    assert main(["jh", str(tmp_path / "missing.txt")]) == 1
    assert main(["frobnicate", "x"]) == 1
    assert main(["--precision", "4", "jh", str(DATA / "ext_third.txt")]) == 1
    assert main(["--help"]) == 0
    capsys.readouterr()


def test_check_failure_is_negative(tmp_path, capsys):
    doc = (DATA / "hyp_half.txt").read_text().replace("submodule 1\n1; 0", "submodule 1\nb; 0")
    p = tmp_path / "bad_sub.txt"
    p.write_text(doc)
    assert main(["check", str(p)]) == 2
    assert "submodule_1_normal: FAILED" in capsys.readouterr().out


def test_inconclusive_without_forms(tmp_path, capsys):
    # E_{1/2} + E_{3/2}: classes are symmetric but every compatible form degenerates
    p = tmp_path / "e1.txt"
    p.write_text("rank 2, prec 16\n1/2*b; 0\n0; 3/2*b\n")
    assert main(["sajh", str(p)]) == 3
    assert "inconclusive" in capsys.readouterr().err


def test_certificate_file_and_verify(tmp_path, capsys):
    cert = tmp_path / "cert.json"
    assert main(["sajh-general", str(DATA / "blocks.txt"), "-o", str(cert)]) == 0
    capsys.readouterr()
    assert main(["verify", str(cert)]) == 0
    assert "certificate verified: rank 4" in capsys.readouterr().out
    d = json.loads(cert.read_text())
    d["params"][0] = "1"
    cert.write_text(json.dumps(d))
    assert main(["verify", str(cert)]) == 1


def test_precision_override(capsys):
    assert main(["--precision", "8", "adjoint", str(DATA / "ext_third.txt")]) == 0
    assert capsys.readouterr().out.splitlines()[0] == "rank 2, prec 8"


def test_stdin(monkeypatch, capsys):
    import io
    monkeypatch.setattr("sys.stdin", io.StringIO((DATA / "ext_third.txt").read_text()))
    assert main(["classify", "-"]) == 0
    assert capsys.readouterr().out.strip() == "Ext(1/3, 0)"
