from __future__ import annotations

import json
import shutil
import subprocess

import pytest

from steineraudit.cli import main, parse_random_spec, resolve_k
from steineraudit.graph import complete_graph, cycle_graph, path_graph, to_graph6
from steineraudit.verify import random_graphs

C6, K7, P7, K10 = (to_graph6(g) for g in (cycle_graph(6), complete_graph(7), path_graph(7), complete_graph(10)))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def records(text):
    return [json.loads(line) for line in text.splitlines() if line.strip()]


def test_resolve_k():
    assert resolve_k("n-3", 7) == 4 and resolve_k("n", 5) == 5 and resolve_k("3", 9) == 3
    for bad in ("n-6", "1", "x"):
        with pytest.raises(Exception):
            resolve_k(bad, 6)


def test_parse_random_spec():
    spec = parse_random_spec("n=9,p=0.4,count=500,seed=7")
    assert spec["n"] == 9 and spec["count"] == 500 and spec["seed"] == 7 and str(spec["p"]) == "2/5"
    with pytest.raises(Exception):
        parse_random_spec("n=9,count=5")


def test_compute_profile(capsys):
    code, out, _ = run(capsys, "compute", "--g6", "Bw", "--k", "2", "--format", "records")
    (rec,) = records(out)
    assert code == 0 and rec["radius"] == 1 and rec["diameter"] == 1
    code, out, _ = run(capsys, "compute", "--g6", C6, "--k", "3", "--format", "records")
    (rec,) = records(out)
    assert rec["diameter"] == 4 and rec["witness"] == [0, 2, 4] and len(rec["witness_edges"]) == 4


def test_compute_terminals_and_average(capsys, tmp_path):
    path = tmp_path / "path5.txt"
    path.write_text("5 4\n0 1\n1 2\n2 3\n3 4\n")
    code, out, _ = run(capsys, "compute", "--edges", str(path), "--terminals", "0,4", "--format", "records")
    assert code == 0 and records(out)[0]["distance"] == 4
    code, out, _ = run(capsys, "compute", "--g6", "B_", "--terminals", "0,2")
    assert code == 0 and "d=inf" in out
    code, out, _ = run(capsys, "compute", "--g6", "Bg", "--k", "2", "--average", "--format", "records")
    assert records(out)[0]["average"] == "4/3"


def test_compute_human_and_records_agree(capsys):
    _, human, _ = run(capsys, "compute", "--g6", C6, "--k", "3")
    _, rec, _ = run(capsys, "compute", "--g6", C6, "--k", "3", "--format", "records")
    r = records(rec)[0]
    assert f"diameter  {r['diameter']}" in human and f"witness   {r['witness']}" in human


def test_classify(capsys):
    code, out, _ = run(capsys, "classify", "--g6", K7, "--k", "n-3")
    assert code == 0 and "predicted=3" in out and "PROP2_KAPPA_GE_4" in out
    code, out, _ = run(capsys, "classify", "--g6", P7, "--k", "n-3", "--check", "--format", "records")
    rec = records(out)[0]
    assert code == 0 and rec["predicted"] == 6 and rec["match"] and rec["rule_chain"] == ["THM3_CUTS_GE_3"]
    code, out, _ = run(capsys, "classify", "--g6", C6, "--k", "n-3", "--interpretation", "literal",
                       "--check", "--format", "records")
    rec = records(out)[0]
    assert code == 1 and (rec["predicted"], rec["oracle"], rec["match"]) == (3, 4, False)
    code, _, _ = run(capsys, "classify", "--g6", C6, "--k", "n-3", "--check")
    assert code == 0


def test_classify_errors(capsys):
    code, _, err = run(capsys, "classify", "--g6", K7, "--k", "2")
    assert code == 2 and "n-3" in err
    code, _, err = run(capsys, "classify", "--g6", "B_", "--k", "n")
    assert code == 2
    code, _, err = run(capsys, "classify", "--g6", "Bw!", "--k", "n")
    assert code == 2 and "line 1" in err


def test_audit_file(capsys, fixtures_dir):
    code, out, _ = run(capsys, "audit", "--input", str(fixtures_dir / "connected6.g6"), "--k", "all",
                       "--no-timing")
    summary = records(out)[-1]
    assert code == 0 and summary["type"] == "summary" and summary["graphs"] == 112
    code, out, _ = run(capsys, "audit", "--input", str(fixtures_dir / "connected5.g6"), "--strict",
                       "--interpretation", "amended", "--exhaustive")
    assert code == 0
    code, _, _ = run(capsys, "audit", "--input", str(fixtures_dir / "connected6.g6"), "--strict")
    assert code == 1


def test_audit_random_is_deterministic(capsys, tmp_path):
    argv = ["audit", "--random", "n=9,p=0.4,count=20,seed=7", "--k", "n-3", "--no-timing"]
    _, a, _ = run(capsys, *argv)
    _, b, _ = run(capsys, *argv, "--workers", "2")
    assert a == b and records(a)[-1]["config"]["seed"] == 7
    code, _, _ = run(capsys, "audit", "--random", "n=6,p=0,count=1,seed=1")
    assert code == 2


def test_audit_output_and_recheck(capsys, tmp_path, fixtures_dir):
    report = tmp_path / "r.jsonl"
    run(capsys, "audit", "--input", str(fixtures_dir / "connected6.g6"), "--k", "n-3",
        "--output", str(report), "--no-timing")
    code, out, _ = run(capsys, "recheck", str(report))
    assert code == 0 and "112 records, 0 inconsistent" in out
    lines = report.read_text().splitlines()
    rec = json.loads(lines[0])
    rec["oracle"] += 1
    report.write_text(json.dumps(rec) + "\n")
    code, _, _ = run(capsys, "recheck", str(report))
    assert code == 1


def test_profile(capsys):
    code, out, _ = run(capsys, "profile", "--g6", K10, "--format", "records")
    rows = records(out)
    assert code == 0 and {r["k"] for r in rows} == set(range(2, 11))
    assert all(r["mean_ms"] is not None for r in rows)
    (g14,) = random_graphs(14, "3/10", 1, seed=2)
    code, out, _ = run(capsys, "profile", "--g6", g14, "--k", "n-3", "--format", "records")
    assert {r["auto"] for r in records(out)} == {"complement"}
    # k = 12 fits the default terminal cap of 14; a lower cap trips the guard instead of running
    code, out, _ = run(capsys, "profile", "--g6", g14, "--k", "12", "--engine", "terminal-dp",
                       "--samples", "2", "--format", "records")
    assert code == 0 and records(out)[0]["note"] is None
    code, out, _ = run(capsys, "profile", "--g6", g14, "--k", "12", "--engine", "terminal-dp",
                       "--terminal-cap", "10", "--format", "records")
    assert code == 0 and records(out)[0]["note"].startswith("guard")


def test_random_subcommand(capsys):
    code, out, _ = run(capsys, "random", "n=10,p=1,count=1,seed=5")
    assert code == 0 and out.strip() == K10
    code, _, err = run(capsys, "random", "n=6,p=0,count=1,seed=1")
    assert code == 2 and "attempts" in err


@pytest.mark.skipif(shutil.which("steineraudit") is None, reason="console script not installed")
def test_console_script():
    proc = subprocess.run(["steineraudit", "classify", "--g6", C6, "--k", "n-3", "--interpretation",
                           "literal", "--check"], capture_output=True, text=True)
    assert proc.returncode == 1 and "match=false" in proc.stdout
