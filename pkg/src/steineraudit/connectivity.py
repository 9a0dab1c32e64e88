"""Cut vertices, blocks, vertex connectivity and 2-cuts.

Conventions: ``kappa(K_n) = n - 1``, ``kappa(K_1) = 0``, a disconnected graph
has ``kappa = 0``, and ``is_k_connected(g, k)`` additionally requires
``n > k``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations

from .graph import Graph, GraphError, component_masks, is_connected_mask, iter_bits


@dataclass(frozen=True)
class ConnectivityProfile:
    kappa: int
    cut_vertices: tuple[int, ...]
    blocks: tuple[tuple[int, ...], ...]
    leaf_count: int
    is_connected: bool


def articulation_points_and_blocks(g: Graph) -> tuple[list[int], list[tuple[int, ...]]]:
    """Lowpoint DFS (iterative).  Isolated vertices form single-vertex blocks."""
    n = g.n
    nbrs = [g.neighbors(v) for v in range(n)]
    disc = [-1] * n
    low = [0] * n
    is_cut = [False] * n
    blocks: list[tuple[int, ...]] = []
    clock = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        if not nbrs[root]:
            disc[root] = clock
            clock += 1
            blocks.append((root,))
            continue
        disc[root] = low[root] = clock
        clock += 1
        root_children = 0
        edge_stack: list[tuple[int, int]] = []
        stack = [(root, -1, iter(nbrs[root]))]
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = clock
                    clock += 1
                    edge_stack.append((v, w))
                    stack.append((w, v, iter(nbrs[w])))
                    if v == root:
                        root_children += 1
                    advanced = True
                    break
                if w != parent and disc[w] < disc[v]:
                    low[v] = min(low[v], disc[w])
                    edge_stack.append((v, w))
            if advanced:
                continue
            stack.pop()
            if parent == -1:
                continue
            low[parent] = min(low[parent], low[v])
            if low[v] >= disc[parent]:
                if parent != root:
                    is_cut[parent] = True
                members = set()
                while True:
                    a, b = edge_stack.pop()
                    members.update((a, b))
                    if (a, b) == (parent, v):
                        break
                blocks.append(tuple(sorted(members)))
        if root_children > 1:
            is_cut[root] = True
    blocks.sort()
    return [v for v in range(n) if is_cut[v]], blocks


def cut_vertices(g: Graph) -> list[int]:
    return articulation_points_and_blocks(g)[0]


def _local_connectivity(g: Graph, s: int, t: int, limit: int | None = None) -> int:
    """Max number of internally disjoint s-t paths (s, t nonadjacent), capped at ``limit``."""
    # vertex v -> in-node 2v, out-node 2v+1; unit capacity on v_in -> v_out
    cap: dict[int, dict[int, int]] = {}

    def arc(a, b, c):
        cap.setdefault(a, {})[b] = cap.setdefault(a, {}).get(b, 0) + c
        cap.setdefault(b, {}).setdefault(a, 0)

    big = g.n + 1
    for v in range(g.n):
        arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
        for w in iter_bits(g.adj[v]):
            arc(2 * v + 1, 2 * w, big)
    source, sink = 2 * s + 1, 2 * t
    flow = 0
    while limit is None or flow < limit:
        prev = {source: source}
        queue = deque([source])
        while queue and sink not in prev:
            a = queue.popleft()
            for b, c in cap[a].items():
                if c > 0 and b not in prev:
                    prev[b] = a
                    queue.append(b)
        if sink not in prev:
            return flow
        b = sink
        while b != source:
            a = prev[b]
            cap[a][b] -= 1
            cap[b][a] += 1
            b = a
        flow += 1
    return flow


@lru_cache(maxsize=4096)
def vertex_connectivity(g: Graph) -> int:
    """Exact kappa(G) by unit-capacity max-flow on the vertex-split digraph.

    Uses the Esfahanian-Hakimi pair family: a minimum-degree vertex ``v``
    against each non-neighbour, plus each nonadjacent pair of neighbours of
    ``v``.  A minimum separator either avoids ``v`` (first family) or
    contains it, in which case two neighbours of ``v`` lie on opposite sides.
    Each flow stops once it reaches the best cut found so far.  Results are
    memoized per (immutable) graph.
    """
    n = g.n
    if n <= 1:
        return 0
    if not g.is_connected():
        return 0
    if g.m == n * (n - 1) // 2:
        return n - 1
    v = min(range(n), key=lambda x: (g.degree(x), x))
    best = g.degree(v)
    for w in range(n):
        if w != v and not g.has_edge(v, w):
            best = min(best, _local_connectivity(g, v, w, best))
    nv = g.neighbors(v)
    for x, y in combinations(nv, 2):
        if not g.has_edge(x, y):
            best = min(best, _local_connectivity(g, x, y, best))
    return best


def is_k_connected(g: Graph, k: int) -> bool:
    if k < 0:
        raise GraphError(f"k must be non-negative, got {k}")
    return g.n > k and vertex_connectivity(g) >= k


def two_cuts(g: Graph) -> list[tuple[int, int]]:
    """All pairs whose deletion leaves a disconnected graph, lexicographic."""
    if not g.is_connected():
        raise GraphError("two_cuts requires a connected graph")
    full = g.full_mask
    out = []
    for x, y in combinations(range(g.n), 2):
        rest = full & ~(1 << x) & ~(1 << y)
        if rest and not is_connected_mask(g.adj, rest):
            out.append((x, y))
    return out


def disconnects(g: Graph, removed: int) -> bool:
    """Whether deleting the ``removed`` bitmask leaves >= 2 components."""
    return len(component_masks(g.adj, g.full_mask & ~removed)) >= 2


def profile(g: Graph) -> ConnectivityProfile:
    cuts, blocks = articulation_points_and_blocks(g)
    return ConnectivityProfile(
        kappa=vertex_connectivity(g),
        cut_vertices=tuple(cuts),
        blocks=tuple(blocks),
        leaf_count=sum(1 for v in range(g.n) if g.degree(v) == 1),
        is_connected=g.is_connected(),
    )
