#!/usr/bin/env python3
"""Exhaustive engine agreement: every terminal set of every connected graph on n vertices.

Both engines are compared with each other and with the subset table, and
every finite witness is tree-checked.  At n = 8 this takes about 25 minutes
on one core, so the test suite only samples it.
"""

from __future__ import annotations

import argparse
import sys
import time
from itertools import combinations
from pathlib import Path

from steineraudit.graph import parse_graph6
from steineraudit.steiner import Engine, check_witness, steiner_distance, steiner_table

FIXTURES = Path(__file__).resolve().parents[1] / "fixtures"


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--n", type=int, default=8)
    args = parser.parse_args()
    lines = (FIXTURES / f"connected{args.n}.g6").read_text().split()
    start = time.perf_counter()
    sets = bad = 0
    for g6 in lines:
        g = parse_graph6(g6)
        table = steiner_table(g)
        for k in range(1, g.n + 1):
            for s in combinations(range(g.n), k):
                a = steiner_distance(g, s, Engine.COMPLEMENT)
                b = steiner_distance(g, s, Engine.TERMINAL_DP)
                sets += 1
                if a.distance != b.distance or a.distance != table[sum(1 << v for v in s)] \
                        or not check_witness(g, a) or not check_witness(g, b):
                    bad += 1
                    print(f"disagreement: {g6} S={list(s)} {a.distance} {b.distance}", file=sys.stderr)
    print(f"n={args.n}: {len(lines)} graphs, {sets} terminal sets, {bad} disagreements, "
          f"{time.perf_counter() - start:.0f} s")
    return 1 if bad else 0


if __name__ == "__main__":
    raise SystemExit(main())
