"""``steineraudit`` command line: compute, classify, audit, profile, random, recheck.

Exit codes: 0 success, 1 a mismatch that the command is asked to fail on,
2 malformed input or configuration.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time
from fractions import Fraction
from itertools import combinations
from pathlib import Path
from typing import Iterator, Sequence

from . import characterize as ch
from .graph import Graph, GraphError, parse_graph6, read_edge_list, read_graph6_lines, to_graph6
from .steiner import (
    COMPLEMENT_CAP,
    DP_THRESHOLD,
    TERMINAL_CAP,
    Engine,
    ResourceGuardError,
    average_steiner_distance,
    eccentricity_profile,
    steiner_diameter,
    steiner_distance,
)
from .verify import (
    DEFAULT_SEED,
    AuditConfig,
    AuditError,
    KPolicy,
    audit_stream,
    dumps,
    random_graphs,
    recheck,
)

EXIT_OK, EXIT_MISMATCH, EXIT_INPUT = 0, 1, 2


class UsageError(Exception):
    pass


# -- argument helpers -----------------------------------------------------------


def resolve_k(spec: str, n: int) -> int:
    """``"5"`` or ``"n"`` / ``"n-3"``; checked against ``2 <= k <= n``."""
    s = spec.replace(" ", "").lower()
    try:
        if s == "n":
            k = n
        elif s.startswith("n-"):
            k = n - int(s[2:])
        else:
            k = int(s)
    except ValueError:
        raise UsageError(f"cannot parse k from {spec!r}") from None
    if not 2 <= k <= n:
        raise UsageError(f"k = {k} outside 2..{n}")
    return k


def parse_random_spec(spec: str) -> dict:
    """``n=9,p=0.4,count=500,seed=7`` (seed optional)."""
    out: dict = {}
    for part in spec.split(","):
        key, sep, value = part.partition("=")
        key = key.strip()
        if not sep or key not in ("n", "p", "count", "seed", "max_attempts"):
            raise UsageError(f"bad --random entry {part!r}")
        try:
            out[key] = Fraction(value.strip()) if key == "p" else int(value)
        except ValueError:
            raise UsageError(f"bad value in --random entry {part!r}") from None
    missing = {"n", "p", "count"} - out.keys()
    if missing:
        raise UsageError(f"--random is missing {', '.join(sorted(missing))}")
    return out


def _terminals(spec: str) -> list[int]:
    try:
        return [int(t) for t in spec.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"bad --terminals {spec!r}") from None


def _source_lines(args) -> Iterator[str]:
    if args.g6 is not None:
        return iter([args.g6])
    if getattr(args, "random", None) is not None:
        spec = parse_random_spec(args.random)
        if "seed" in spec and args.seed is not None and spec["seed"] != args.seed:
            raise UsageError("conflicting seeds in --random and --seed")
        seed = spec.get("seed", args.seed if args.seed is not None else DEFAULT_SEED)
        args.seed = seed
        extra = {"max_attempts": spec["max_attempts"]} if "max_attempts" in spec else {}
        return random_graphs(spec["n"], spec["p"], spec["count"], seed, **extra)
    if args.input is None or args.input == "-":
        return iter(sys.stdin)
    try:
        return iter(Path(args.input).read_text(encoding="ascii").splitlines())
    except (OSError, UnicodeDecodeError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None


def _graphs(args) -> Iterator[tuple[str, Graph]]:
    if args.edges is not None:
        try:
            g = read_edge_list(args.edges)
        except OSError as exc:
            raise UsageError(f"cannot read {args.edges}: {exc}") from None
        yield to_graph6(g), g
        return
    for lineno, g6 in read_graph6_lines(_source_lines(args)):
        try:
            yield g6, parse_graph6(g6)
        except GraphError as exc:
            raise UsageError(f"line {lineno}: {exc}") from None


def _amendments(args) -> ch.Amendments:
    if args.amendments is None:
        return ch.Amendments()
    try:
        return ch.Amendments.parse(args.amendments)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _emit(args, record: dict, human: str) -> None:
    print(dumps(record) if args.format == "records" else human)


# -- subcommands ----------------------------------------------------------------


def cmd_compute(args) -> int:
    engine_opts = dict(dp_threshold=args.dp_threshold, complement_cap=args.complement_cap,
                       terminal_cap=args.terminal_cap)
    for g6, g in _graphs(args):
        if args.terminals is not None:
            r = steiner_distance(g, _terminals(args.terminals), args.engine, **engine_opts)
            rec = {"type": "distance", "graph6": g6, "terminals": list(r.terminals),
                   "distance": r.distance if r.finite else str(r.distance),
                   "steiner_points": list(r.steiner_points),
                   "edges": [list(e) for e in r.witness_edges], "engine": r.engine.value}
            human = (f"{g6}  S={list(r.terminals)}  d={r.distance}  "
                     f"steiner_points={list(r.steiner_points)}  tree={list(r.witness_edges)}")
            _emit(args, rec, human)
            continue
        k = resolve_k(args.k, g.n)
        if args.average:
            mu = average_steiner_distance(g, k, args.engine)
            rec = {"type": "average", "graph6": g6, "n": g.n, "k": k, "average": str(mu)}
            _emit(args, rec, f"{g6}  n={g.n}  k={k}  mu={mu}")
            continue
        p = eccentricity_profile(g, k, args.engine)
        rec = {"type": "profile", "graph6": g6, "n": g.n, "k": k, "radius": p.radius,
               "diameter": p.diameter, "center": list(p.center),
               "eccentricity": [p.per_vertex[v] for v in range(g.n)],
               "witness": list(p.diameter_witness),
               "witness_edges": [list(e) for e in p.witness_result.witness_edges]}
        human = (f"{g6}  n={g.n}  k={k}\n  radius    {p.radius}\n  diameter  {p.diameter}\n"
                 f"  center    {list(p.center)}\n  witness   {list(p.diameter_witness)}\n"
                 f"  tree      {list(p.witness_result.witness_edges)}")
        _emit(args, rec, human)
    return EXIT_OK


_CLASSIFIERS = {0: ch.classify_n, 1: ch.classify_n_minus_1, 2: ch.classify_n_minus_2}


def cmd_classify(args) -> int:
    amendments = _amendments(args)
    status = EXIT_OK
    for g6, g in _graphs(args):
        k = resolve_k(args.k, g.n)
        offset = g.n - k
        if offset not in (0, 1, 2, 3):
            raise UsageError(f"classify supports k in {{n, n-1, n-2, n-3}}, got k = {k} (n = {g.n})")
        if offset == 3:
            out = ch.classify_n_minus_3(g, args.interpretation, amendments)
        else:
            out = _CLASSIFIERS[offset](g)
        rec = {"type": "classification", "graph6": g6, "n": g.n, "k": k,
               "predicted": out.predicted, "rule_chain": list(out.rule_chain),
               "interpretation": ch.Interpretation(args.interpretation).value,
               "witness": out.witness.to_dict() if out.witness else None}
        human = (f"{g6}  n={g.n}  k={k}  predicted={out.predicted}  "
                 f"rules={' > '.join(out.rule_chain)}  interpretation={rec['interpretation']}")
        if args.check:
            oracle = steiner_diameter(g, k)[0]
            rec["oracle"], rec["match"] = oracle, oracle == out.predicted
            human += f"  oracle={oracle}  match={str(rec['match']).lower()}"
            if not rec["match"]:
                status = EXIT_MISMATCH
        _emit(args, rec, human)
    return status


def _interpretations(choice: str) -> tuple[ch.Interpretation, ...]:
    if choice == "both":
        return (ch.Interpretation.LITERAL, ch.Interpretation.AMENDED)
    return (ch.Interpretation(choice),)


def _human_summary(summary: dict) -> str:
    names = summary["config"]["interpretations"]
    head = f"{'n':>3} {'graphs':>7} {'records':>8} {'hard':>5} " + " ".join(f"{'mm_' + x:>12}" for x in names)
    rows = [head]
    for n, t in summary["totals"].items():
        rows.append(f"{n:>3} {t['graphs']:>7} {t['records']:>8} {t['hard']:>5} "
                    + " ".join(f"{t['mismatches'][x]:>12}" for x in names))
    rows.append(f"failed={str(summary['failed']).lower()}  wall_time={summary['wall_time']}")
    return "\n".join(rows)


def cmd_audit(args) -> int:
    lines = _source_lines(args)
    config = AuditConfig(
        ks=KPolicy(args.k),
        interpretations=_interpretations(args.interpretation),
        amendments=_amendments(args),
        strict=args.strict,
        exhaustive=args.exhaustive,
        seed=args.seed if args.random is not None else None,
        dp_threshold=args.dp_threshold,
        complement_cap=args.complement_cap,
    )
    out = open(args.output, "w", encoding="ascii") if args.output else sys.stdout
    try:
        summary = None
        for rec in audit_stream(lines, config, workers=args.workers, timing=not args.no_timing):
            if rec["type"] == "summary":
                summary = rec
            if args.format == "records":
                if args.only_mismatches and rec["type"] == "record" and all(rec["match"].values()) \
                        and not rec["hard"]:
                    continue
                out.write(dumps(rec) + "\n")
            elif rec["type"] == "record" and not all(rec["match"].values()):
                out.write(f"mismatch {rec['graph6']} k={rec['k_label']} oracle={rec['oracle']} "
                          f"predicted={rec['predicted']}\n")
        if args.format == "human":
            out.write(_human_summary(summary) + "\n")
    finally:
        if out is not sys.stdout:
            out.close()
    return EXIT_MISMATCH if summary["failed"] else EXIT_OK


def _sweep(spec: str | None, n: int) -> list[int]:
    if spec is None or spec == "all":
        return list(range(2, n + 1))
    return [resolve_k(s, n) for s in spec.split(",")]


def cmd_profile(args) -> int:
    engines = [Engine.COMPLEMENT, Engine.TERMINAL_DP] if args.engine == "both" else [Engine(args.engine)]
    rng = random.Random(args.seed if args.seed is not None else DEFAULT_SEED)
    opts = dict(dp_threshold=args.dp_threshold, complement_cap=args.complement_cap,
                terminal_cap=args.terminal_cap)
    status = EXIT_OK
    if args.format == "human":
        print(f"{'n':>3} {'k':>3} {'engine':<12} {'auto':<12} {'sets':>5} {'mean_ms':>10}  note")
    for g6, g in _graphs(args):
        for k in _sweep(args.k, g.n):
            sets = list(combinations(range(g.n), k))
            if len(sets) > args.samples:
                sets = sorted(rng.sample(sets, args.samples))
            auto = (Engine.COMPLEMENT if g.n - k <= args.dp_threshold else Engine.TERMINAL_DP).value
            distances = {}
            for engine in engines:
                rec = {"type": "timing", "graph6": g6, "n": g.n, "k": k, "engine": engine.value,
                       "auto": auto, "sets": len(sets), "mean_ms": None, "note": None}
                try:
                    t0 = time.perf_counter()
                    distances[engine] = [steiner_distance(g, s, engine, **opts).distance for s in sets]
                    rec["mean_ms"] = round(1000 * (time.perf_counter() - t0) / max(len(sets), 1), 4)
                except ResourceGuardError as exc:
                    rec["note"] = f"guard: {exc}"
                human = (f"{g.n:>3} {k:>3} {engine.value:<12} {auto:<12} {len(sets):>5} "
                         f"{str(rec['mean_ms']):>10}  {rec['note'] or ''}")
                _emit(args, rec, human)
            if len(distances) == 2 and len(set(map(tuple, distances.values()))) != 1:
                status = EXIT_MISMATCH
                _emit(args, {"type": "disagreement", "graph6": g6, "k": k},
                      f"engines disagree on {g6} k={k}")
    return status


def cmd_random(args) -> int:
    spec = parse_random_spec(args.spec)
    seed = spec.get("seed", args.seed if args.seed is not None else DEFAULT_SEED)
    extra = {"max_attempts": spec["max_attempts"]} if "max_attempts" in spec else {}
    for g6 in random_graphs(spec["n"], spec["p"], spec["count"], seed, **extra):
        print(g6)
    return EXIT_OK


def cmd_recheck(args) -> int:
    source = sys.stdin if args.report == "-" else open(args.report, encoding="ascii")
    failures = checked = 0
    with source:
        for lineno, line in enumerate(source, start=1):
            if not line.strip():
                continue
            try:
                rec = json.loads(line)
            except json.JSONDecodeError as exc:
                raise UsageError(f"line {lineno}: {exc}") from None
            if rec.get("type") != "record":
                continue
            checked += 1
            if not recheck(rec):
                failures += 1
                print(f"line {lineno}: record {rec.get('graph6')} k={rec.get('k')} is inconsistent")
    print(f"rechecked {checked} records, {failures} inconsistent")
    return EXIT_MISMATCH if failures else EXIT_OK


# -- parser ---------------------------------------------------------------------------


def _add_input(p: argparse.ArgumentParser, random_ok: bool = False) -> None:
    src = p.add_mutually_exclusive_group()
    src.add_argument("--g6", help="one graph6 string")
    src.add_argument("--input", help="file of graph6 lines ('-' for stdin, the default)")
    src.add_argument("--edges", help="edge-list file: 'n m' header then 'u v' lines")
    if random_ok:
        src.add_argument("--random", metavar="SPEC", help="n=..,p=..,count=..[,seed=..] random connected graphs")


def _add_engine_opts(p: argparse.ArgumentParser) -> None:
    p.add_argument("--dp-threshold", type=int, default=DP_THRESHOLD)
    p.add_argument("--complement-cap", type=int, default=COMPLEMENT_CAP)
    p.add_argument("--terminal-cap", type=int, default=TERMINAL_CAP)


def _add_format(p: argparse.ArgumentParser, default: str = "human") -> None:
    p.add_argument("--format", choices=("human", "records"), default=default)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="steineraudit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("compute", help="Steiner distance, eccentricity profile, or average")
    _add_input(p)
    p.add_argument("--k", default="n-3", help="integer or n-<offset> (default n-3)")
    p.add_argument("--terminals", help="comma-separated terminal set S")
    p.add_argument("--average", action="store_true", help="print mu_k as an exact fraction")
    p.add_argument("--engine", choices=[e.value for e in Engine], default="auto")
    _add_engine_opts(p)
    _add_format(p)
    p.set_defaults(func=cmd_compute)

    p = sub.add_parser("classify", help="structural prediction of sdiam_k")
    _add_input(p)
    p.add_argument("--k", default="n-3")
    p.add_argument("--interpretation", choices=("literal", "amended"), default="amended")
    p.add_argument("--amendments", help="comma-separated repairs for amended (default: all)")
    p.add_argument("--check", action="store_true", help="compare with the oracle; exit 1 on mismatch")
    _add_format(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("audit", help="classifier vs oracle over a graph stream")
    _add_input(p, random_ok=True)
    p.add_argument("--k", choices=[x.value for x in KPolicy], default="all")
    p.add_argument("--interpretation", choices=("literal", "amended", "both"), default="both")
    p.add_argument("--amendments")
    p.add_argument("--strict", action="store_true", help="any mismatch is a failure")
    p.add_argument("--exhaustive", action="store_true", help="check graph counts per n")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--seed", type=int)
    p.add_argument("--no-timing", action="store_true", help="omit wall time for byte-stable reports")
    p.add_argument("--output", help="report path (default stdout)")
    p.add_argument("--only-mismatches", action="store_true",
                   help="records format: keep only mismatching records and the summary")
    _add_engine_opts(p)
    _add_format(p, default="records")
    p.set_defaults(func=cmd_audit)

    p = sub.add_parser("profile", help="engine timings over a k sweep")
    _add_input(p)
    p.add_argument("--k", help="'all' or comma-separated k values (default all)")
    p.add_argument("--engine", choices=["both", Engine.COMPLEMENT.value, Engine.TERMINAL_DP.value],
                   default="both")
    p.add_argument("--samples", type=int, default=20, help="k-sets timed per (k, engine)")
    p.add_argument("--seed", type=int)
    _add_engine_opts(p)
    _add_format(p)
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("random", help="print random connected graphs as graph6")
    p.add_argument("spec", help="n=..,p=..,count=..[,seed=..]")
    p.add_argument("--seed", type=int)
    p.set_defaults(func=cmd_random)

    p = sub.add_parser("recheck", help="re-verify every record of an audit report")
    p.add_argument("report", help="report path or '-'")
    p.set_defaults(func=cmd_recheck)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, AuditError, GraphError, ResourceGuardError, OSError) as exc:
        print(f"steineraudit: error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    raise SystemExit(main())
