"""Immutable undirected simple graphs on vertices ``0..n-1``.

Adjacency is stored as one integer bitmask per vertex, which keeps vertex
subsets cheap to manipulate and hash.  Everything in the package that needs
"a set of vertices" accepts either an iterable of labels or a bitmask built
with :func:`vertex_mask`.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, Sequence

GRAPH6_HEADER = ">>graph6<<"
GRAPH6_MAX_N = 62


class GraphError(ValueError):
    """Malformed graph input or an invalid vertex reference."""


class Graph6Error(GraphError):
    pass


class Graph:
    """Undirected simple graph with dense integer labels.

    Instances are immutable and hashable; two graphs compare equal when they
    have the same order and the same labelled edge set.
    """

    __slots__ = ("n", "adj", "_m")

    def __init__(self, n: int, adj: Sequence[int]):
        if n < 0:
            raise GraphError(f"negative vertex count {n}")
        if len(adj) != n:
            raise GraphError("adjacency length does not match n")
        full = (1 << n) - 1
        for v, row in enumerate(adj):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbour outside 0..{n - 1}")
            if row >> v & 1:
                raise GraphError(f"loop at vertex {v}")
            for w in iter_bits(row):
                if not adj[w] >> v & 1:
                    raise GraphError(f"asymmetric adjacency between {v} and {w}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "adj", tuple(adj))
        object.__setattr__(self, "_m", sum(row.bit_count() for row in adj) // 2)

    def __setattr__(self, name, value):
        raise AttributeError("Graph is immutable")

    @property
    def m(self) -> int:
        return self._m

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def neighbors(self, v: int) -> list[int]:
        return list(iter_bits(self.adj[v]))

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        """Edges as sorted ``(u, v)`` pairs with ``u < v``."""
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u] >> (u + 1) << (u + 1))]

    def without_edge(self, u: int, v: int) -> "Graph":
        if not self.has_edge(u, v):
            raise GraphError(f"no edge {u}-{v}")
        adj = list(self.adj)
        adj[u] &= ~(1 << v)
        adj[v] &= ~(1 << u)
        return Graph(self.n, adj)

    def is_connected(self) -> bool:
        return self.n == 0 or reach(self.adj, 1, self.full_mask) == self.full_mask

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.adj == other.adj

    def __hash__(self):
        return hash((self.n, self.adj))

    def __repr__(self):
        return f"Graph(n={self.n}, edges={self.edges()})"


@dataclass(frozen=True)
class ComponentView:
    """Maximal connected pieces of an induced subgraph, sorted by smallest label."""

    components: tuple[tuple[int, ...], ...]

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(len(c) for c in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[tuple[int, ...]]:
        return iter(self.components)


# -- bit helpers -------------------------------------------------------------


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    mask = 0
    for v in vertices:
        mask |= 1 << v
    return mask


def reach(adj: Sequence[int], start: int, within: int) -> int:
    """Vertices reachable from the ``start`` bitmask inside ``within``."""
    seen = start & within
    frontier = seen
    while frontier:
        nxt = 0
        for v in iter_bits(frontier):
            nxt |= adj[v]
        frontier = nxt & within & ~seen
        seen |= frontier
    return seen


def is_connected_mask(adj: Sequence[int], within: int) -> bool:
    """Whether the subgraph induced on ``within`` is connected (empty counts)."""
    if not within:
        return True
    return reach(adj, within & -within, within) == within


def component_masks(adj: Sequence[int], within: int) -> list[int]:
    """Components of the subgraph induced on ``within``, by smallest vertex."""
    out = []
    rest = within
    while rest:
        comp = reach(adj, rest & -rest, rest)
        out.append(comp)
        rest &= ~comp
    return out


def vertex_mask(g: Graph, vertices: Iterable[int] | int) -> int:
    """Validate a vertex collection against ``g`` and return it as a bitmask."""
    if isinstance(vertices, int):
        if vertices < 0 or vertices & ~g.full_mask:
            raise GraphError("vertex mask outside the graph")
        return vertices
    mask = 0
    for v in vertices:
        if not isinstance(v, int) or isinstance(v, bool):
            raise GraphError(f"vertex label {v!r} is not an integer")
        if not 0 <= v < g.n:
            raise GraphError(f"vertex {v} out of range 0..{g.n - 1}")
        if mask >> v & 1:
            raise GraphError(f"duplicate vertex {v}")
        mask |= 1 << v
    return mask


# -- construction ------------------------------------------------------------


def from_edge_list(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Build a graph from unordered pairs; duplicates collapse, loops are rejected."""
    if n < 0:
        raise GraphError(f"negative vertex count {n}")
    adj = [0] * n
    for e in edges:
        u, v = e
        for w in (u, v):
            if not 0 <= w < n:
                raise GraphError(f"endpoint {w} out of range 0..{n - 1}")
        if u == v:
            raise GraphError(f"loop edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, adj)


def complete_graph(n: int) -> Graph:
    full = (1 << n) - 1
    return Graph(n, [full & ~(1 << v) for v in range(n)])


def path_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    return from_edge_list(n, [(i, (i + 1) % n) for i in range(n)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with centre 0."""
    return from_edge_list(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_bipartite(a: int, b: int) -> Graph:
    return from_edge_list(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return from_edge_list(10, outer + spokes + inner)


# -- graph6 ------------------------------------------------------------------


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 line (``n <= 62``; optional ``>>graph6<<`` header)."""
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string")
    codes = [ord(c) for c in s]
    for pos, c in enumerate(codes):
        if not 63 <= c <= 126:
            raise Graph6Error(f"byte {c} at offset {pos} outside 63..126")
    n = codes[0] - 63
    if n > GRAPH6_MAX_N:
        raise Graph6Error(f"graph6 size prefix beyond the supported n <= {GRAPH6_MAX_N}")
    nbits = n * (n - 1) // 2
    body = codes[1:]
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(f"body length {len(body)} wrong for n={n}")
    bits = 0
    for c in body:
        bits = bits << 6 | (c - 63)
    pad = len(body) * 6 - nbits
    if bits & ((1 << pad) - 1):
        raise Graph6Error("nonzero padding bits")
    bits >>= pad
    adj = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if bits >> k & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k -= 1
    return Graph(n, adj)


def to_graph6(g: Graph) -> str:
    """Canonical graph6 encoding without header."""
    n = g.n
    if n > GRAPH6_MAX_N:
        raise Graph6Error(f"graph6 output supports n <= {GRAPH6_MAX_N}, got {n}")
    bits = []
    for j in range(1, n):
        for i in range(j):
            bits.append(g.adj[i] >> j & 1)
    bits.extend([0] * (-len(bits) % 6))
    out = [chr(63 + n)]
    for p in range(0, len(bits), 6):
        val = 0
        for b in bits[p:p + 6]:
            val = val << 1 | b
        out.append(chr(63 + val))
    return "".join(out)


def read_graph6_lines(lines: Iterable[str]) -> Iterator[tuple[int, str]]:
    """Yield ``(line_number, graph6)`` for non-blank lines, header stripped."""
    for lineno, raw in enumerate(lines, start=1):
        s = raw.strip()
        if s.startswith(GRAPH6_HEADER):
            s = s[len(GRAPH6_HEADER):]
        if s:
            yield lineno, s


# -- edge-list files ---------------------------------------------------------


def parse_edge_list(text: str) -> Graph:
    """Parse the ``n m`` header + ``u v`` lines format; ``#`` lines are comments."""
    rows = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        s = raw.strip()
        if not s or s.startswith("#"):
            continue
        parts = s.split()
        if len(parts) != 2:
            raise GraphError(f"line {lineno}: expected two integers, got {s!r}")
        try:
            rows.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise GraphError(f"line {lineno}: non-integer token in {s!r}") from None
    if not rows:
        raise GraphError("edge list is missing the 'n m' header")
    (n, m), edges = rows[0], rows[1:]
    if m < 0 or len(edges) != m:
        raise GraphError(f"header declares {m} edges, found {len(edges)}")
    return from_edge_list(n, edges)


def read_edge_list(path: str | Path) -> Graph:
    return parse_edge_list(Path(path).read_text(encoding="utf-8"))


def format_edge_list(g: Graph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"


# -- subgraphs ---------------------------------------------------------------


def induced_subgraph(g: Graph, s: Iterable[int] | int) -> tuple[Graph, tuple[int, ...]]:
    """Subgraph induced on ``s``, relabelled ``0..|s|-1`` in increasing label order.

    Returns the subgraph and the label map (new label -> original label).
    """
    mask = vertex_mask(g, s)
    labels = tuple(iter_bits(mask))
    index = {v: i for i, v in enumerate(labels)}
    adj = []
    for v in labels:
        adj.append(mask_of(index[w] for w in iter_bits(g.adj[v] & mask)))
    return Graph(len(labels), adj), labels


def components(g: Graph, within: Iterable[int] | int | None = None) -> ComponentView:
    mask = g.full_mask if within is None else vertex_mask(g, within)
    return ComponentView(tuple(tuple(iter_bits(c)) for c in component_masks(g.adj, mask)))


def edges_between(g: Graph, v: int, c: Iterable[int] | int) -> int:
    """Number of edges joining ``v`` to members of ``c`` (``v`` must not be in ``c``)."""
    mask = vertex_mask(g, c)
    vertex_mask(g, [v])
    if mask >> v & 1:
        raise GraphError(f"vertex {v} lies inside the target set")
    return (g.adj[v] & mask).bit_count()
