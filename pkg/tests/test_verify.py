from __future__ import annotations

import json

import pytest

from conftest import connected_lines
from steineraudit.characterize import Interpretation
from steineraudit.graph import complete_graph, parse_graph6, to_graph6
from steineraudit.verify import (
    SCHEMA,
    AuditConfig,
    AuditError,
    KPolicy,
    audit_stream,
    dumps,
    random_graphs,
    recheck,
)


def _run(lines, **kw):
    workers = kw.pop("workers", 1)
    out = list(audit_stream(lines, AuditConfig(**kw), workers=workers, timing=False))
    return out[:-1], out[-1]


def test_n5_all_policies():
    records, summary = _run(connected_lines(5), exhaustive=True)
    assert summary["graphs"] == 21 and summary["records"] == 84
    assert summary["hard"] == 0 and not summary["failed"]
    by_k = summary["totals"]["5"]["by_k"]
    for label in ("n", "n-1", "n-2"):
        assert by_k[label]["mismatch_literal"] == by_k[label]["mismatch_amended"] == 0
    assert by_k["n-3"] == {"records": 21, "mismatch_literal": 1, "mismatch_amended": 0}
    assert [r["seq"] for r in records] == sorted(r["seq"] for r in records)


def test_n6_contains_c6_literal_record():
    records, summary = _run(connected_lines(6), ks=KPolicy.N_MINUS_3)
    c6 = [r for r in records if r["graph6"] == to_graph6(parse_graph6("EhEG"))]
    assert len(c6) == 1
    r = c6[0]
    assert r["predicted"] == {"literal": 3, "amended": 4} and r["oracle"] == 4
    assert r["match"] == {"literal": False, "amended": True}
    assert r["witness"]["terminals"] == [0, 2, 4] and r["witness"]["distance"] == 4
    assert summary["mismatches"] == {"literal": 13, "amended": 3}


def test_empty_stream():
    records, summary = _run([])
    assert records == [] and summary["graphs"] == 0 and summary["totals"] == {}
    assert not summary["failed"]


def test_warnings_and_parse_errors():
    records, summary = _run(["B_", "A_"])  # K_2 plus an isolated vertex, then K_2
    assert records[0]["type"] == "warning" and records[0]["reason"] == "disconnected"
    assert records[1]["k_label"] == "n"
    with pytest.raises(AuditError, match="line 2"):
        list(audit_stream(["Bw", "B!"]))


def test_exhaustive_count_guard():
    with pytest.raises(AuditError):
        list(audit_stream(connected_lines(5)[:-1], AuditConfig(exhaustive=True)))


def test_strict_flags_any_mismatch():
    _, summary = _run(connected_lines(6), strict=True, interpretations=(Interpretation.AMENDED,))
    assert summary["failed"] and summary["hard"] == 0
    _, summary = _run(connected_lines(5), strict=True, interpretations=(Interpretation.AMENDED,))
    assert not summary["failed"]


def test_worker_count_does_not_change_bytes():
    lines = connected_lines(6)
    one = [dumps(r) for r in audit_stream(lines, AuditConfig(), workers=1, timing=False)]
    two = [dumps(r) for r in audit_stream(lines, AuditConfig(), workers=2, chunk_size=7, timing=False)]
    assert one == two


def test_records_recheck():
    records, _ = _run(connected_lines(6), ks=KPolicy.N_MINUS_3)
    for r in records:
        assert r["schema"] == SCHEMA
        assert recheck(r) and recheck(dumps(r))


def test_recheck_detects_tampering():
    records, _ = _run(connected_lines(6), ks=KPolicy.N_MINUS_3)
    r = next(r for r in records if r["witness"])
    bad_oracle = json.loads(dumps(r))
    bad_oracle["oracle"] += 1
    assert not recheck(bad_oracle)
    bad_set = json.loads(dumps(r))
    bad_set["witness"]["terminals"] = [3, 4, 5]
    assert not recheck(bad_set)
    bad_tree = json.loads(dumps(r))
    bad_tree["witness"]["edges"] = bad_tree["witness"]["edges"][:-1]
    assert not recheck(bad_tree)
    with pytest.raises(AuditError):
        recheck({"type": "record"})
    with pytest.raises(AuditError):
        recheck("not json")


def test_random_graphs():
    assert list(random_graphs(10, 1, 1, seed=3)) == [to_graph6(complete_graph(10))]
    a = list(random_graphs(8, "1/2", 100, seed=42))
    assert a == list(random_graphs(8, "1/2", 100, seed=42)) and len(a) == 100
    assert all(parse_graph6(s).is_connected() for s in a)
    with pytest.raises(AuditError):
        list(random_graphs(6, 0, 1, seed=1))
    with pytest.raises(AuditError):
        list(random_graphs(6, "3/2", 1))
