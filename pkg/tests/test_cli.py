import json
import subprocess
import sys

import pytest

from d4ext import cli
from d4ext.errors import UndecidedError


def run(capsys, *argv):
    code = cli.main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def test_verify(capsys):
    code, out, _ = run(capsys, "verify", "--n", "4", "1", "5", "12", "96")
    assert code == 0
    assert "12*96+4 = 34^2" in out and "1*5+4 = 3^2" in out
    code, out, _ = run(capsys, "verify", "--n", "4", "1", "2", "3")
    assert code == 0 and "not a D(4)-tuple" in out


def test_extend_and_classify(capsys):
    code, out, _ = run(capsys, "extend", "1", "5", "12")
    assert code == 0 and "d+ = 96" in out and "d- = 0" in out
    code, out, _ = run(capsys, "classify", "1", "5", "12", "96")
    assert code == 0 and out.strip() == "regular"


def test_pell(capsys):
    code, out, _ = run(capsys, "pell", "solve", "--D", "13", "--N", "1")
    assert code == 0 and "x1=649 y1=180" in out
    code, out, _ = run(capsys, "pell", "enumerate", "--D", "3", "--N", "-8", "--y-max", "100")
    assert code == 0 and [l.split()[1] for l in out.splitlines()] == ["y=2", "y=6", "y=22", "y=82"]
    code, out, _ = run(capsys, "pell", "solve", "--D", "1", "--N", "12")
    assert code == 0 and "x=4 y=2" in out


def test_sequences(capsys):
    code, out, _ = run(capsys, "sequences", "intersect", "1", "5", "12", "--m-max", "4", "--n-max", "4")
    assert code == 0 and "m=2 n=2 z=34 d=96" in out


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "iterate", "thm51-case1")
    assert code == 0 and out.split()[:2] == ["7401", "2860"]
    code, out, _ = run(capsys, "bounds", "eval", "thm51-case1", "--k", "1", "--a2", "7401")
    assert code == 0 and "holds = True" in out
    code, out, _ = run(capsys, "bounds", "eval", "thm51-case1", "--k", "1", "--a2", "7402")
    assert "holds = False" in out
    code, out, _ = run(capsys, "bounds", "m-bound")
    assert code == 0 and "c < 10^2157" in out and "d < 10^(10^26)" in out
    code, out, _ = run(capsys, "bounds", "max", "sec6-large-a1", "--k", "3")
    assert code == 0 and out.strip() == "533"


def test_analysis(capsys):
    code, out, _ = run(capsys, "analysis", "a1-eq-1", "--j-max", "8")
    assert code == 0 and "j=4 k=13" in out and "identity=FAIL" not in out


def test_campaign_cli(tmp_path, capsys):
    ck, out = str(tmp_path / "c.ckpt"), str(tmp_path / "h.jsonl")
    args = ["--pairs", "1/5,2/6,2/7", "--b-floor", "1", "--b-ceiling-rule", "fixed:10^4",
            "--c-window-rule", "explicit:1,10^6", "--checkpoint", ck, "--out", out]
    code, text, _ = run(capsys, "campaign", "run", *args, "--stop-after", "1")
    assert code == 0 and "incomplete" in text
    code, text, _ = run(capsys, "campaign", "resume", *args, "--json")
    rep = json.loads(text)
    assert code == 0 and rep["complete"] and rep["resumed"]
    assert {(int(h["a1"]), int(h["b"]), int(h["c"])) for h in rep["hits"]} >= {(1, 12, 96), (2, 16, 240)}
    code, text, _ = run(capsys, "campaign", "report", *args)
    assert code == 0 and "3/3 complete" in text


def test_campaign_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("pair_source = explicit:1/3\nb_ceiling_rule = fixed:10^7\nb_floor = 10^5\n")
    code, text, _ = run(capsys, "--workers", "1", "campaign", "run", "--config", str(cfg))
    assert code == 0 and "b candidates       1" in text


def test_exit_codes(capsys, monkeypatch):
    assert run(capsys, "verify", "0", "5")[0] == 1
    assert run(capsys, "extend", "1", "2", "3")[0] == 1
    assert run(capsys, "bounds", "iterate", "nope")[0] == 1
    assert run(capsys, "campaign", "resume", "--pairs", "1/3", "--checkpoint", "/nonexistent/x")[0] == 1
    assert run(capsys, "campaign", "run")[0] == 1
    assert run(capsys, "bogus")[0] == 2
    assert run(capsys, "extend", "1", "5")[0] == 2
    assert run(capsys, "campaign", "run", "--pairs", "1/3", "--c-window-rule", "sideways")[0] == 2

    def undecided(_args):
        raise UndecidedError("tie", boundary=7)

    monkeypatch.setattr(cli, "_cmd_extend", undecided)
    code, _, err = run(capsys, "extend", "1", "5", "12")
    assert code == 3 and "undecided" in err


def test_precision_flag(capsys):
    code, out, _ = run(capsys, "--precision-bits", "512", "bounds", "eval", "a2-01-case2", "--x", "100")
    assert code == 0 and "prec=512" in out


def test_module_entry_point():
    proc = subprocess.run([sys.executable, "-m", "d4ext", "extend", "1", "5", "12"],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0 and "d+ = 96" in proc.stdout


def test_flags_override_config_file(tmp_path, capsys):
    cfg = tmp_path / "c.cfg"
    cfg.write_text("pair_source = explicit:1/3\nb_ceiling_rule = fixed:10^7\nb_floor = 10^5\n")
    code, text, _ = run(capsys, "campaign", "run", "--config", str(cfg), "--b-floor", "2000000", "--json")
    rep = json.loads(text)
    assert code == 0 and rep["b_candidates"] == 0 and rep["pairs_completed"] == 1
