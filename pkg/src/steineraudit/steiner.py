"""Exact Steiner distance and the Steiner k-invariants built on it.

Two independent engines compute ``d_G(S)``:

``COMPLEMENT``
    Enumerates candidate Steiner-point sets ``X`` outside ``S`` in order of
    increasing size and stops at the first ``X`` for which ``G[S | X]`` is
    connected.  This is exact because of the following lemma: a connected
    subgraph containing ``S`` with the fewest edges is a tree, and a tree on
    the vertex set ``S | X`` has exactly ``|S| + |X| - 1`` edges; conversely any
    connected induced ``G[S | X]`` has such a spanning tree.  So
    ``d_G(S) = |S| - 1 + min{|X| : G[S | X] connected}``.  Cost grows with
    ``n - |S|``, which is small in the ``k`` close to ``n`` regime.

``TERMINAL_DP``
    The Dreyfus-Wagner dynamic program over (terminal subset, vertex) states
    with unit edge lengths.  Cost grows with ``|S|``.

``AUTO`` picks ``COMPLEMENT`` when ``n - |S| <= dp_threshold``.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import comb

import numpy as np

from .graph import Graph, GraphError, is_connected_mask, iter_bits, reach, vertex_mask

DP_THRESHOLD = 14
COMPLEMENT_CAP = 20
TERMINAL_CAP = 14


class ResourceGuardError(RuntimeError):
    """An engine was asked for an instance beyond its configured size cap."""


class _Infinite:
    """Distance of a terminal set that no connected subgraph contains.

    Compares greater than every integer; arithmetic on it is a TypeError.
    """

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INFINITE"

    def __str__(self):
        return "inf"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("steineraudit.INFINITE")

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __reduce__(self):
        return (_Infinite, ())


INFINITE = _Infinite()


class Engine(str, enum.Enum):
    AUTO = "auto"
    COMPLEMENT = "complement"
    TERMINAL_DP = "terminal-dp"


@dataclass(frozen=True)
class SteinerResult:
    terminals: tuple[int, ...]
    distance: int | _Infinite
    steiner_points: tuple[int, ...] = ()
    witness_edges: tuple[tuple[int, int], ...] = ()
    engine: Engine = field(default=Engine.AUTO, compare=False)

    @property
    def finite(self) -> bool:
        return self.distance is not INFINITE


@dataclass(frozen=True)
class EccentricityProfile:
    k: int
    per_vertex: dict[int, int]
    radius: int
    diameter: int
    center: tuple[int, ...]
    diameter_witness: tuple[int, ...]
    witness_result: SteinerResult


def _bfs_tree_edges(adj, within: int) -> tuple[tuple[int, int], ...]:
    root = (within & -within).bit_length() - 1
    seen = 1 << root
    queue = deque([root])
    edges = []
    while queue:
        v = queue.popleft()
        for w in iter_bits(adj[v] & within & ~seen):
            seen |= 1 << w
            edges.append((min(v, w), max(v, w)))
            queue.append(w)
    return tuple(sorted(edges))


def _complement_search(g: Graph, s_mask: int, component: int) -> tuple[int, ...]:
    """Lexicographically first minimum-size ``X`` with ``G[S | X]`` connected."""
    pool = list(iter_bits(component & ~s_mask))
    for size in range(len(pool) + 1):
        for xs in combinations(pool, size):
            mask = s_mask
            for x in xs:
                mask |= 1 << x
            if is_connected_mask(g.adj, mask):
                return xs
    raise AssertionError("terminal component is connected, search cannot fail")


def _complement(g: Graph, s_mask: int, component: int) -> SteinerResult:
    xs = _complement_search(g, s_mask, component)
    within = s_mask
    for x in xs:
        within |= 1 << x
    terminals = tuple(iter_bits(s_mask))
    return SteinerResult(
        terminals=terminals,
        distance=len(terminals) + len(xs) - 1,
        steiner_points=xs,
        witness_edges=_bfs_tree_edges(g.adj, within),
        engine=Engine.COMPLEMENT,
    )


def _bfs_all(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    n = g.n
    big = 4 * n + 4
    dist = np.full((n, n), big, dtype=np.int64)
    pred = np.full((n, n), -1, dtype=np.int64)
    for src in range(n):
        dist[src, src] = 0
        queue = deque([src])
        while queue:
            v = queue.popleft()
            for w in iter_bits(g.adj[v]):
                if dist[src, w] == big:
                    dist[src, w] = dist[src, v] + 1
                    pred[src, w] = v
                    queue.append(w)
    return dist, pred


def _terminal_dp(g: Graph, s_mask: int) -> SteinerResult:
    terminals = tuple(iter_bits(s_mask))
    if len(terminals) == 1:
        return SteinerResult(terminals, 0, (), (), Engine.TERMINAL_DP)
    dist, pred = _bfs_all(g)
    root, others = terminals[0], terminals[1:]
    q = len(others)
    full = (1 << q) - 1
    dp = np.empty((full + 1, g.n), dtype=np.int64)
    via = np.zeros((full + 1, g.n), dtype=np.int64)
    split = np.zeros((full + 1, g.n), dtype=np.int64)
    for i, t in enumerate(others):
        dp[1 << i] = dist[t]
    for d in range(1, full + 1):
        if d & (d - 1) == 0:
            continue
        low = d & -d
        rest = d ^ low
        subs = []
        sub = rest
        # every split {E, D\E} once: E always carries the lowest terminal
        while True:
            if sub != rest:
                subs.append(sub | low)
            if sub == 0:
                break
            sub = (sub - 1) & rest
        subs_arr = np.array(subs, dtype=np.int64)
        merged = dp[subs_arr] + dp[d ^ subs_arr]
        best_split = merged.argmin(axis=0)
        joined = merged[best_split, np.arange(g.n)]
        split[d] = subs_arr[best_split]
        total = joined[:, None] + dist
        best_u = total.argmin(axis=0)
        dp[d] = total[best_u, np.arange(g.n)]
        via[d] = best_u

    edges: set[tuple[int, int]] = set()

    def add_path(a: int, b: int) -> None:
        while b != a:
            p = int(pred[a, b])
            edges.add((min(p, b), max(p, b)))
            b = p

    stack = [(full, root)]
    while stack:
        d, v = stack.pop()
        if d & (d - 1) == 0:
            add_path(v, others[d.bit_length() - 1])
            continue
        u = int(via[d, v])
        add_path(v, u)
        e = int(split[d, u])
        stack.append((e, u))
        stack.append((d ^ e, u))

    distance = int(dp[full, root])
    if len(edges) != distance:
        raise AssertionError("Dreyfus-Wagner reconstruction is not a minimum tree")
    covered = {v for e in edges for v in e}
    return SteinerResult(
        terminals=terminals,
        distance=distance,
        steiner_points=tuple(sorted(covered - set(terminals))),
        witness_edges=tuple(sorted(edges)),
        engine=Engine.TERMINAL_DP,
    )


def steiner_distance(
    g: Graph,
    s,
    engine: Engine | str = Engine.AUTO,
    *,
    dp_threshold: int = DP_THRESHOLD,
    complement_cap: int = COMPLEMENT_CAP,
    terminal_cap: int = TERMINAL_CAP,
) -> SteinerResult:
    """Exact ``d_G(S)`` together with a witness tree."""
    engine = Engine(engine)
    s_mask = vertex_mask(g, s)
    k = s_mask.bit_count()
    if k == 0:
        raise GraphError("terminal set must be nonempty")
    outside = g.n - k
    if engine is Engine.AUTO:
        engine = Engine.COMPLEMENT if outside <= dp_threshold else Engine.TERMINAL_DP
    if engine is Engine.COMPLEMENT and outside > complement_cap:
        raise ResourceGuardError(
            f"complement engine limited to n - |S| <= {complement_cap}, got {outside}")
    if engine is Engine.TERMINAL_DP and k > terminal_cap:
        raise ResourceGuardError(f"terminal DP limited to |S| <= {terminal_cap}, got {k}")

    component = reach(g.adj, s_mask & -s_mask, g.full_mask)
    if s_mask & ~component:
        return SteinerResult(tuple(iter_bits(s_mask)), INFINITE, engine=engine)
    if engine is Engine.COMPLEMENT:
        return _complement(g, s_mask, component)
    return _terminal_dp(g, s_mask)


def check_witness(g: Graph, result: SteinerResult) -> bool:
    """Re-verify a result's witness: an S-covering tree of G with ``distance`` edges."""
    s = set(result.terminals)
    if not result.finite:
        s_mask = vertex_mask(g, s)
        return bool(s_mask & ~reach(g.adj, s_mask & -s_mask, g.full_mask))
    edges = result.witness_edges
    if len(edges) != result.distance or len(set(edges)) != len(edges):
        return False
    if any(not g.has_edge(u, v) for u, v in edges):
        return False
    touched = {v for e in edges for v in e} | s
    if touched - s != set(result.steiner_points):
        return False
    if result.distance != len(s) + len(result.steiner_points) - 1:
        return False
    if len(edges) != len(touched) - 1:
        return False
    mask = 0
    adj = [0] * g.n
    for u, v in edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    for v in touched:
        mask |= 1 << v
    return is_connected_mask(adj, mask)


# -- Steiner k-invariants ----------------------------------------------------


def _require_k(g: Graph, k: int) -> None:
    if not 2 <= k <= g.n:
        raise GraphError(f"k must satisfy 2 <= k <= n = {g.n}, got {k}")
    if not g.is_connected():
        raise GraphError("Steiner k-invariants require a connected graph")


def _all_distances(g: Graph, k: int, engine) -> list[tuple[tuple[int, ...], int]]:
    out = []
    for s in combinations(range(g.n), k):
        out.append((s, steiner_distance(g, s, engine).distance))
    return out


def steiner_eccentricity(g: Graph, v: int, k: int, engine: Engine | str = Engine.AUTO) -> int:
    _require_k(g, k)
    vertex_mask(g, [v])
    others = [w for w in range(g.n) if w != v]
    return max(steiner_distance(g, (v,) + rest, engine).distance
               for rest in combinations(others, k - 1))


def steiner_diameter(g: Graph, k: int, engine: Engine | str = Engine.AUTO) -> tuple[int, tuple[int, ...]]:
    """``sdiam_k(G)`` and the lexicographically smallest k-set attaining it."""
    _require_k(g, k)
    best, witness = -1, ()
    ceiling = g.n - 1
    for s in combinations(range(g.n), k):
        d = steiner_distance(g, s, engine).distance
        if d > best:
            best, witness = d, s
            if best == ceiling:
                break
    return best, witness


def eccentricity_profile(g: Graph, k: int, engine: Engine | str = Engine.AUTO) -> EccentricityProfile:
    _require_k(g, k)
    per_vertex = {v: 0 for v in range(g.n)}
    best, witness = -1, ()
    for s, d in _all_distances(g, k, engine):
        for v in s:
            if d > per_vertex[v]:
                per_vertex[v] = d
        if d > best:
            best, witness = d, s
    radius = min(per_vertex.values())
    return EccentricityProfile(
        k=k,
        per_vertex=per_vertex,
        radius=radius,
        diameter=best,
        center=tuple(v for v in range(g.n) if per_vertex[v] == radius),
        diameter_witness=witness,
        witness_result=steiner_distance(g, witness, engine),
    )


def steiner_center(g: Graph, k: int, engine: Engine | str = Engine.AUTO) -> list[int]:
    return list(eccentricity_profile(g, k, engine).center)


def steiner_k_distance(g: Graph, v: int, k: int, engine: Engine | str = Engine.AUTO) -> int:
    """Total Steiner distance over all k-sets containing ``v``.

    Used as the Steiner k-distance of a vertex when locating the k-median.
    """
    _require_k(g, k)
    vertex_mask(g, [v])
    others = [w for w in range(g.n) if w != v]
    return sum(steiner_distance(g, (v,) + rest, engine).distance
               for rest in combinations(others, k - 1))


def steiner_median(g: Graph, k: int, engine: Engine | str = Engine.AUTO) -> list[int]:
    _require_k(g, k)
    totals = [0] * g.n
    for s, d in _all_distances(g, k, engine):
        for v in s:
            totals[v] += d
    low = min(totals)
    return [v for v in range(g.n) if totals[v] == low]


def average_steiner_distance(g: Graph, k: int, engine: Engine | str = Engine.AUTO) -> Fraction:
    _require_k(g, k)
    total = sum(d for _, d in _all_distances(g, k, engine))
    return Fraction(total, comb(g.n, k))


# -- whole-graph subset table -------------------------------------------------

TABLE_CAP = 20


def _popcounts(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    out = np.zeros(1 << n, dtype=np.int64)
    for v in range(n):
        out += (masks >> v) & 1
    return out


def connected_subsets(g: Graph) -> np.ndarray:
    """Boolean array over all ``2**n`` masks: is ``G[mask]`` connected (and nonempty)?

    A connected graph on two or more vertices has a non-cut vertex ``v`` (a
    leaf of any spanning tree), so ``T`` is connected iff some ``v`` in ``T``
    has ``T - v`` connected and a neighbour in ``T - v``.
    """
    n = g.n
    if n > TABLE_CAP:
        raise ResourceGuardError(f"subset table needs n <= {TABLE_CAP}, got {n}")
    size = 1 << n
    popcount = _popcounts(n)
    conn = np.zeros(size, dtype=bool)
    for v in range(n):
        conn[1 << v] = True
    # process masks in order of popcount so T - v is final before T
    order = np.argsort(popcount, kind="stable")
    bounds = np.searchsorted(popcount[order], np.arange(n + 2))
    for p in range(2, n + 1):
        layer = order[bounds[p]:bounds[p + 1]]
        hit = np.zeros(len(layer), dtype=bool)
        for v in range(n):
            bit = 1 << v
            inside = (layer & bit) != 0
            rest = layer & ~bit
            hit |= inside & conn[rest] & ((rest & g.adj[v]) != 0)
        conn[layer] = hit
    return conn


def steiner_table(g: Graph) -> np.ndarray:
    """``d_G(S)`` for every mask ``S`` at once, ``-1`` when ``S`` spans components.

    ``d(S) + 1`` is the order of the smallest connected induced subgraph
    containing ``S``: a minimum over supersets, taken with the standard
    superset-sum transform.  Empty and singleton sets give 0.
    """
    n = g.n
    conn = connected_subsets(g)
    size = 1 << n
    masks = np.arange(size, dtype=np.int64)
    order = _popcounts(n)
    big = n + 1
    best = np.where(conn, order, big)
    for v in range(n):
        bit = 1 << v
        low = masks[(masks & bit) == 0]
        best[low] = np.minimum(best[low], best[low | bit])
    out = best - 1
    out[best == big] = -1
    out[0] = 0
    return out


def steiner_diameters(g: Graph) -> dict[int, int]:
    """``sdiam_k`` for every ``2 <= k <= n`` from one subset table (connected ``g``)."""
    _require_k(g, 2)
    table = steiner_table(g)
    pop = _popcounts(g.n)
    return {k: int(table[pop == k].max()) for k in range(2, g.n + 1)}
