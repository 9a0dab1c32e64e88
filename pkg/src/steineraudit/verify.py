"""Audit harness: structural predictions against the exact oracle, as JSON lines.

Each input graph yields one record per applicable ``k``.  Records carry the
oracle ``sdiam_k``, the prediction of every requested interpretation, and on
any disagreement a certificate: the lexicographically smallest k-set ``S``
attaining the oracle value together with its Steiner tree.  A summary object
closes the stream.

Hard failures (exit code 1) are mismatches in the classes that are proven
exact: every classifier for ``k`` in ``{n, n-1, n-2}``, the cut-count and
connectivity contracts, the ``n - 4`` and ``n - 1`` branches at ``k = n - 3``,
and the obstruction-triple cross-check.  Under ``strict`` every mismatch of a
requested interpretation is hard.
"""

from __future__ import annotations

import enum
import json
import random
import time
from collections import deque
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, islice
from typing import Iterable, Iterator

from .characterize import (
    Amendments,
    Interpretation,
    classify_n,
    classify_n_minus_1,
    classify_n_minus_2,
    classify_n_minus_3,
    classify_n_minus_3_triple,
    corollary3_predicate,
    lemma2_cut_count,
    prop1_connectivity,
)
from .graph import Graph, GraphError, mask_of, parse_graph6, read_graph6_lines, to_graph6
from .steiner import (
    COMPLEMENT_CAP,
    DP_THRESHOLD,
    TABLE_CAP,
    TERMINAL_CAP,
    Engine,
    SteinerResult,
    check_witness,
    steiner_diameter,
    steiner_distance,
    steiner_table,
)

SCHEMA = "steineraudit.report/1"
KNOWN_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117, 9: 261080}
DEFAULT_SEED = 0
DEFAULT_MAX_ATTEMPTS = 1000


class AuditError(ValueError):
    """Bad input or configuration; maps to exit code 2."""


class KPolicy(str, enum.Enum):
    N = "n"
    N_MINUS_1 = "n-1"
    N_MINUS_2 = "n-2"
    N_MINUS_3 = "n-3"
    ALL = "all"

    def offsets(self) -> tuple[int, ...]:
        if self is KPolicy.ALL:
            return (0, 1, 2, 3)
        return (("n", "n-1", "n-2", "n-3").index(self.value),)


_MIN_N = {0: 2, 1: 3, 2: 4, 3: 5}


@dataclass(frozen=True)
class AuditConfig:
    ks: KPolicy = KPolicy.ALL
    interpretations: tuple[Interpretation, ...] = (Interpretation.LITERAL, Interpretation.AMENDED)
    amendments: Amendments = field(default_factory=Amendments)
    strict: bool = False
    exhaustive: bool = False
    seed: int | None = None
    dp_threshold: int = DP_THRESHOLD
    complement_cap: int = COMPLEMENT_CAP

    def echo(self) -> dict:
        """Configuration as reported in the summary (worker count deliberately absent)."""
        return {
            "ks": self.ks.value,
            "interpretations": [i.value for i in self.interpretations],
            "amendments": self.amendments.active(),
            "strict": self.strict,
            "exhaustive": self.exhaustive,
            "seed": self.seed,
            "dp_threshold": self.dp_threshold,
            "complement_cap": self.complement_cap,
        }


# -- oracle -------------------------------------------------------------------


class _Oracle:
    """``sdiam_k`` and attaining k-sets, from one subset table when ``n`` allows."""

    def __init__(self, g: Graph, config: AuditConfig):
        self.g = g
        self.config = config
        self.table = steiner_table(g) if g.n <= TABLE_CAP else None

    def diameter(self, k: int) -> tuple[int, tuple[int, ...]]:
        if self.table is None:
            return steiner_diameter(self.g, k)
        best, witness = -1, ()
        for s in combinations(range(self.g.n), k):
            d = int(self.table[mask_of(s)])
            if d > best:
                best, witness = d, s
                if best == self.g.n - 1:
                    break
        return best, witness

    def certificate(self, s: tuple[int, ...]) -> dict:
        result = steiner_distance(self.g, s, Engine.AUTO, dp_threshold=self.config.dp_threshold,
                                  complement_cap=self.config.complement_cap)
        if not check_witness(self.g, result):
            raise AssertionError(f"witness tree failed verification for S={s}")
        return {
            "terminals": list(result.terminals),
            "distance": result.distance,
            "steiner_points": list(result.steiner_points),
            "edges": [list(e) for e in result.witness_edges],
            "engine": result.engine.value,
        }


# -- per-graph audit ----------------------------------------------------------


def _label(offset: int) -> str:
    return "n" if offset == 0 else f"n-{offset}"


def _contracts(g: Graph, offset: int, oracle: int) -> dict[str, bool]:
    """Cut-count and connectivity contracts that speak about ``sdiam_{n - offset}``."""
    n = g.n
    out = {}
    if 1 <= offset <= min(3, n - 2):
        out[f"cut_count_{offset}"] = lemma2_cut_count(g, offset) == (oracle == n - 1)
    j = offset + 1
    if 1 <= j <= min(3, n - 2):
        out[f"connectivity_{j}"] = prop1_connectivity(g, j) == (oracle == n - j)
    return out


def _classify(g: Graph, offset: int, interpretation: Interpretation, amendments: Amendments):
    if offset == 0:
        return classify_n(g)
    if offset == 1:
        return classify_n_minus_1(g)
    if offset == 2:
        return classify_n_minus_2(g)
    return classify_n_minus_3(g, interpretation, amendments)


def audit_graph(seq: int, g6: str, config: AuditConfig) -> list[dict]:
    """All records for one graph6 line (a warning record if it cannot be audited)."""
    g = parse_graph6(g6)
    if not g.is_connected():
        return [{"schema": SCHEMA, "type": "warning", "seq": seq, "graph6": g6,
                 "n": g.n, "reason": "disconnected"}]
    offsets = [o for o in config.ks.offsets() if g.n >= _MIN_N[o]]
    if not offsets:
        return [{"schema": SCHEMA, "type": "warning", "seq": seq, "graph6": g6,
                 "n": g.n, "reason": "no-applicable-k"}]
    oracle = _Oracle(g, config)
    records = []
    for offset in offsets:
        k = g.n - offset
        value, attaining = oracle.diameter(k)
        if not k - 1 <= value <= g.n - 1:
            raise AssertionError(f"oracle value {value} outside [k-1, n-1] for {g6}, k={k}")
        outcomes = {i.value: _classify(g, offset, i, config.amendments) for i in config.interpretations}
        match = {name: o.predicted == value for name, o in outcomes.items()}
        contracts = _contracts(g, offset, value)
        hard = not all(contracts.values())
        crosscheck = None
        if offset == 3:
            triple = classify_n_minus_3_triple(g)
            crosscheck = {
                "triple": triple.predicted == value,
                "corollary3": corollary3_predicate(g) == (value == g.n - 2),
            }
            hard |= not crosscheck["triple"]
            for o in outcomes.values():
                hard |= (o.predicted == g.n - 4) != (value == g.n - 4)
                hard |= (o.predicted == g.n - 1) != (value == g.n - 1)
        else:
            hard |= not all(match.values())
        mismatch = not all(match.values())
        records.append({
            "schema": SCHEMA,
            "type": "record",
            "seq": seq,
            "graph6": g6,
            "n": g.n,
            "m": g.m,
            "k": k,
            "k_label": _label(offset),
            "oracle": value,
            "predicted": {name: o.predicted for name, o in outcomes.items()},
            "match": match,
            "rule_chain": {name: list(o.rule_chain) for name, o in outcomes.items()},
            "contracts": contracts,
            "crosscheck": crosscheck,
            "hard": hard,
            "witness": oracle.certificate(attaining) if mismatch or hard else None,
        })
    return records


def _audit_chunk(chunk: list[tuple[int, str]], config: AuditConfig) -> list[dict]:
    return [r for seq, g6 in chunk for r in audit_graph(seq, g6, config)]


# -- streaming ------------------------------------------------------------------


def _numbered(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Validate every line up front so a parse failure names its line number."""
    for seq, (lineno, g6) in enumerate(read_graph6_lines(lines)):
        try:
            parse_graph6(g6)
        except GraphError as exc:
            raise AuditError(f"line {lineno}: {exc}") from None
        yield seq, g6


def _chunks(items: Iterator, size: int) -> Iterator[list]:
    while True:
        chunk = list(islice(items, size))
        if not chunk:
            return
        yield chunk


def _ordered_map(chunks: Iterator[list], config: AuditConfig, workers: int) -> Iterator[dict]:
    """Process chunks on a pool and yield records in input order (bounded look-ahead)."""
    if workers <= 1:
        for chunk in chunks:
            yield from _audit_chunk(chunk, config)
        return
    with ProcessPoolExecutor(max_workers=workers) as pool:
        pending: deque = deque()
        for chunk in chunks:
            pending.append(pool.submit(_audit_chunk, chunk, config))
            if len(pending) >= 4 * workers:
                yield from pending.popleft().result()
        while pending:
            yield from pending.popleft().result()


@dataclass
class _Totals:
    graphs: int = 0
    disconnected: int = 0
    skipped: int = 0
    records: int = 0
    hard: int = 0
    mismatches: dict[str, int] = field(default_factory=dict)
    by_k: dict[str, dict[str, int]] = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {
            "graphs": self.graphs,
            "disconnected": self.disconnected,
            "skipped": self.skipped,
            "records": self.records,
            "hard": self.hard,
            "mismatches": dict(sorted(self.mismatches.items())),
            "by_k": {k: dict(sorted(v.items())) for k, v in sorted(self.by_k.items())},
        }


def audit_stream(
    lines: Iterable[str],
    config: AuditConfig = AuditConfig(),
    workers: int = 1,
    chunk_size: int = 64,
    timing: bool = True,
) -> Iterator[dict]:
    """Yield records in input order, then one summary object.

    The summary's ``failed`` flag is the exit-code decision: a hard mismatch,
    or under ``strict`` any mismatch of a requested interpretation.
    """
    start = time.perf_counter()
    totals: dict[int, _Totals] = {}
    names = [i.value for i in config.interpretations]
    last_seq = None
    for rec in _ordered_map(_chunks(_numbered(lines), chunk_size), config, workers):
        t = totals.setdefault(rec["n"], _Totals(mismatches={name: 0 for name in names}))
        if rec["seq"] != last_seq:
            t.graphs += 1
            last_seq = rec["seq"]
        if rec["type"] == "warning":
            if rec["reason"] == "disconnected":
                t.disconnected += 1
            else:
                t.skipped += 1
        else:
            t.records += 1
            t.hard += rec["hard"]
            bucket = t.by_k.setdefault(rec["k_label"], {"records": 0, **{f"mismatch_{x}": 0 for x in names}})
            bucket["records"] += 1
            for name, ok in rec["match"].items():
                if not ok:
                    t.mismatches[name] += 1
                    bucket[f"mismatch_{name}"] += 1
        yield rec

    if config.exhaustive:
        for n, t in sorted(totals.items()):
            expected = KNOWN_CONNECTED.get(n)
            connected = t.graphs - t.disconnected
            if expected is not None and connected != expected:
                raise AuditError(f"n={n}: {connected} connected graphs, expected {expected}")

    hard = sum(t.hard for t in totals.values())
    mismatches = {name: sum(t.mismatches[name] for t in totals.values()) for name in names}
    failed = hard > 0 or (config.strict and any(mismatches.values()))
    yield {
        "schema": SCHEMA,
        "type": "summary",
        "totals": {str(n): t.to_dict() for n, t in sorted(totals.items())},
        "graphs": sum(t.graphs for t in totals.values()),
        "records": sum(t.records for t in totals.values()),
        "hard": hard,
        "mismatches": mismatches,
        "failed": failed,
        "wall_time": round(time.perf_counter() - start, 3) if timing else None,
        "config": config.echo(),
    }


def dumps(record: dict) -> str:
    return json.dumps(record, separators=(",", ":"))


# -- random inputs --------------------------------------------------------------


def random_graphs(
    n: int,
    edge_probability: Fraction | float | str,
    count: int,
    seed: int = DEFAULT_SEED,
    max_attempts: int = DEFAULT_MAX_ATTEMPTS,
) -> Iterator[str]:
    """Connected G(n, p) samples as graph6 lines.

    ``random.Random(seed)``; pairs are visited in graph6 order
    ``(0,1), (0,2), (1,2), (0,3), ...`` and an edge is kept when
    ``rng.random() < p``.  Disconnected draws are rejected; more than
    ``max_attempts`` consecutive rejections raise :class:`AuditError`.
    """
    p = Fraction(edge_probability)
    if not 0 <= p <= 1:
        raise AuditError(f"edge probability must lie in [0, 1], got {p}")
    if not 1 <= n <= 62:
        raise AuditError(f"n must lie in 1..62, got {n}")
    if count < 0:
        raise AuditError(f"count must be non-negative, got {count}")
    rng = random.Random(seed)
    pairs = [(i, j) for j in range(1, n) for i in range(j)]
    for _ in range(count):
        for _attempt in range(max_attempts):
            adj = [0] * n
            for i, j in pairs:
                if rng.random() < p:
                    adj[i] |= 1 << j
                    adj[j] |= 1 << i
            g = Graph(n, adj)
            if g.is_connected():
                yield to_graph6(g)
                break
        else:
            raise AuditError(f"no connected sample within {max_attempts} attempts (n={n}, p={p})")


# -- re-verification --------------------------------------------------------------


def recheck(record: dict | str) -> bool:
    """Recompute a record from scratch with engines independent of the audit path.

    ``sdiam_k`` is redone by the complement search over all k-sets, which must
    also pick the stored witness set as the first attaining k-set; the witness
    set is redone by the terminal DP, and the stored tree must be a valid
    S-tree of the stored size.  Raises :class:`AuditError` on a malformed record.
    """
    if isinstance(record, str):
        try:
            record = json.loads(record)
        except json.JSONDecodeError as exc:
            raise AuditError(f"record is not JSON: {exc}") from None
    try:
        if record["type"] != "record" or record["schema"] != SCHEMA:
            raise AuditError("not an audit record")
        g = parse_graph6(record["graph6"])
        k, oracle, witness = int(record["k"]), record["oracle"], record["witness"]
        predicted, match = record["predicted"], record["match"]
    except (KeyError, TypeError, GraphError) as exc:
        raise AuditError(f"malformed record: {exc!r}") from None
    if g.n != record.get("n") or g.m != record.get("m") or not 2 <= k <= g.n:
        return False
    if record.get("k_label") != _label(g.n - k):
        return False
    value, first = steiner_diameter(g, k, Engine.COMPLEMENT)
    if value != oracle:
        return False
    if set(predicted) != set(match) or any((predicted[i] == oracle) != match[i] for i in match):
        return False
    if not all(match.values()) and witness is None:
        return False
    if witness is None:
        return True
    try:
        s = tuple(witness["terminals"])
        edges = tuple(tuple(e) for e in witness["edges"])
        points = tuple(witness["steiner_points"])
    except (KeyError, TypeError) as exc:
        raise AuditError(f"malformed witness: {exc!r}") from None
    if s != first or witness["distance"] != oracle:
        return False
    try:
        if steiner_distance(g, s, Engine.TERMINAL_DP, terminal_cap=max(k, TERMINAL_CAP)).distance != oracle:
            return False
        stored = SteinerResult(s, oracle, points, edges)
        return check_witness(g, stored)
    except GraphError:
        return False
