#!/usr/bin/env python3
"""Regenerate the committed graph6 fixtures under ``fixtures/``.

Connected graphs for n <= 7 come from the networkx graph atlas.  n = 8 is
built by attaching a new vertex to every connected 7-vertex graph in every
possible way (every connected graph has a non-cut vertex, so nothing is
missed) and removing isomorphic duplicates.  Free trees come from
``networkx.nonisomorphic_trees``.  Output is independent of this package's
own graph6 encoder.
"""

from __future__ import annotations

import argparse
from collections import defaultdict
from pathlib import Path

import networkx as nx

KNOWN_CONNECTED = {1: 1, 2: 1, 3: 2, 4: 6, 5: 21, 6: 112, 7: 853, 8: 11117}
KNOWN_TREES = {2: 1, 3: 1, 4: 2, 5: 3, 6: 6, 7: 11, 8: 23, 9: 47, 10: 106}


def g6(graph: nx.Graph) -> str:
    return nx.to_graph6_bytes(graph, header=False).decode("ascii").strip()


def atlas_connected() -> dict[int, list[nx.Graph]]:
    out = defaultdict(list)
    for graph in nx.graph_atlas_g():
        n = graph.number_of_nodes()
        if n >= 1 and nx.is_connected(graph):
            out[n].append(graph)
    return out


def _invariant(graph: nx.Graph) -> tuple:
    degs = dict(graph.degree())
    local = sorted((degs[v], tuple(sorted(degs[w] for w in graph[v]))) for v in graph)
    tri = sorted(nx.triangles(graph).values())
    return (graph.number_of_edges(), tuple(local), tuple(tri),
            nx.weisfeiler_lehman_graph_hash(graph, iterations=3))


def extend(base: list[nx.Graph]) -> list[nx.Graph]:
    n = base[0].number_of_nodes()
    buckets: dict[tuple, list[nx.Graph]] = defaultdict(list)
    for graph in base:
        for mask in range(1, 1 << n):
            h = graph.copy()
            h.add_node(n)
            h.add_edges_from((n, v) for v in range(n) if mask >> v & 1)
            key = _invariant(h)
            if not any(nx.is_isomorphic(h, other) for other in buckets[key]):
                buckets[key].append(h)
    return [graph for group in buckets.values() for graph in group]


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=Path(__file__).resolve().parents[1] / "fixtures", type=Path)
    parser.add_argument("--max-n", type=int, default=8)
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    by_n = atlas_connected()
    if args.max_n >= 8:
        by_n[8] = extend(by_n[7])
    for n in range(1, args.max_n + 1):
        lines = sorted(g6(graph) for graph in by_n[n])
        if len(lines) != KNOWN_CONNECTED[n]:
            raise SystemExit(f"n={n}: generated {len(lines)} connected graphs, expected {KNOWN_CONNECTED[n]}")
        (args.out / f"connected{n}.g6").write_text("\n".join(lines) + "\n", encoding="ascii")
        print(f"connected{n}.g6: {len(lines)}")

    for n, expected in KNOWN_TREES.items():
        lines = sorted(g6(tree) for tree in nx.nonisomorphic_trees(n))
        if len(lines) != expected:
            raise SystemExit(f"n={n}: generated {len(lines)} trees, expected {expected}")
        (args.out / f"trees{n}.g6").write_text("\n".join(lines) + "\n", encoding="ascii")
        print(f"trees{n}.g6: {len(lines)}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
