"""Structural decision procedures for ``sdiam_k`` with ``k`` in ``{n, n-1, n-2, n-3}``.

Nothing in this module computes a Steiner distance; every prediction comes
from connectivity structure alone, so it can be audited against the exact
oracle in :mod:`steineraudit.steiner`.

The ``k = n - 3`` conditions for connectivity 1 and 2 are available under two
interpretations:

``LITERAL``
    The printed conditions, quantifiers as written.  Free symbols are bound
    the way the necessity argument negates them, a cut pair whose deletion
    leaves no component of order >= 3 passes vacuously, and the
    edge condition for a piece anchored at ``y`` counts edges to ``x``.

``AMENDED``
    A set of individually toggleable repairs, see :class:`Amendments`.

Rule identifiers used in ``rule_chain`` are listed in :data:`RULES`.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field, fields
from functools import lru_cache
from itertools import combinations

from .connectivity import articulation_points_and_blocks, vertex_connectivity
from .graph import Graph, GraphError, component_masks, induced_subgraph, iter_bits

RULES = {
    "COR1_CONNECTED": "k = n: every connected graph has sdiam_n = n - 1",
    "COR2_TWO_CONNECTED": "k = n - 1: 2-connected gives n - 2",
    "COR2_CUT_VERTEX": "k = n - 1: a cut vertex gives n - 1",
    "THM2_KAPPA_GE_3": "k = n - 2: kappa >= 3 gives n - 3",
    "THM2_CUTS_GE_2": "k = n - 2: at least two cut vertices give n - 1",
    "THM2_KAPPA2_OR_ONE_CUT": "k = n - 2: kappa = 2 or exactly one cut vertex gives n - 2",
    "PROP2_KAPPA_GE_4": "k = n - 3: kappa >= 4 gives n - 4",
    "THM3_CUTS_GE_3": "k = n - 3: at least three cut vertices give n - 1",
    "PROP3_KAPPA_EQ_3": "k = n - 3: kappa = 3 gives n - 3",
    "KAPPA_EQ_2": "kappa = 2",
    "KAPPA_EQ_1": "kappa = 1",
    "PROP3_K2_BRANCH": "k = n - 3: kappa = 2 cut-pair conditions hold, n - 3",
    "PROP3_K1_BRANCH": "k = n - 3: kappa = 1 single-cut-vertex conditions hold, n - 3",
    "LEMMA4_REJECTED": "kappa = 2 cut-pair conditions fail",
    "LEMMA3_REJECTED": "kappa = 1 single-cut-vertex conditions fail",
    "ELIMINATION_DEFAULT": "k = n - 3: remaining graphs get n - 2",
    "TRIPLE_OBSTRUCTION": "k = n - 3: an obstruction triple exists, n - 2",
    "TRIPLE_FREE": "k = n - 3: no obstruction triple, n - 3",
}


class PreconditionError(GraphError):
    """Input violates the hypothesis of a characterization."""


class Interpretation(str, enum.Enum):
    LITERAL = "literal"
    AMENDED = "amended"


@dataclass(frozen=True)
class Amendments:
    """Repairs applied under the AMENDED interpretation.

    vacuous
        A cut vertex or cut pair whose deletion leaves no component of order
        >= 3 does not witness ``n - 3`` on its own.  That case is decided by
        the triple test (:func:`obstruction_triple`).
    common_cut_universal
        Connectivity 1, both augmented pieces of connectivity 2: read the
        common vertex cut clause as "no pair ``{z', z''}`` of the piece is a
        common vertex cut" rather than "some pair is not one".
    y_edges
        Connectivity 2, piece anchored at ``y``: count edges to ``y``, mirroring
        the ``x`` case.
    singleton_pieces
        Connectivity 1: a one-vertex piece of ``H - {u, v}`` passes the
        connectivity bullets.  Its augmentations are single edges, which no
        bullet can accept.
    """

    vacuous: bool = True
    common_cut_universal: bool = True
    y_edges: bool = True
    singleton_pieces: bool = True

    def active(self) -> list[str]:
        return [f.name for f in fields(self) if getattr(self, f.name)]

    @classmethod
    def parse(cls, names: str) -> "Amendments":
        """Build from a comma-separated list of repair names (``none`` for none)."""
        chosen = {s.strip() for s in names.split(",") if s.strip() not in ("", "none")}
        known = {f.name for f in fields(cls)}
        unknown = chosen - known
        if unknown:
            raise ValueError(f"unknown amendment(s): {', '.join(sorted(unknown))}")
        return cls(**{name: name in chosen for name in known})


NO_AMENDMENTS = Amendments(False, False, False, False)


def resolve(interpretation: Interpretation | str, amendments: Amendments | None = None) -> Amendments:
    interpretation = Interpretation(interpretation)
    if interpretation is Interpretation.LITERAL:
        return NO_AMENDMENTS
    return amendments if amendments is not None else Amendments()


@dataclass(frozen=True)
class StructuralWitness:
    """Which branch each component satisfied, or the first violated condition.

    ``roles`` maps proof symbols (``u``, ``v``, ``x``, ``y``, ``z``) to vertices; ``branches`` pairs
    a component (original labels) with a tag from :data:`WITNESS_TAGS`.
    """

    roles: dict[str, int] = field(default_factory=dict)
    branches: tuple[tuple[tuple[int, ...], str], ...] = ()
    violation: str | None = None

    def to_dict(self) -> dict:
        return {
            "roles": dict(sorted(self.roles.items())),
            "branches": [[list(c), tag] for c, tag in self.branches],
            "violation": self.violation,
        }


WITNESS_TAGS = frozenset({
    "THREE_CONNECTED", "CUT_PAIR", "VACUOUS", "TRIPLE_FREE",
    "NOT_ONE_CUT_VERTEX", "NO_VALID_PARTNER", "LOW_CONNECTIVITY",
    "NO_VALID_CUT_PAIR", "CONDITIONS_HOLD", "OBSTRUCTION_TRIPLE",
})


@dataclass(frozen=True)
class ClassificationOutcome:
    k: int
    predicted: int
    rule_chain: tuple[str, ...]
    interpretation: Interpretation
    witness: StructuralWitness | None = None


# -- structural helpers on induced subgraphs --------------------------------


class _Inspector:
    """Cached connectivity queries on induced subgraphs of one graph."""

    def __init__(self, g: Graph):
        self.g = g
        self.kappa = lru_cache(maxsize=None)(self._kappa)
        self.cut_vertices = lru_cache(maxsize=None)(self._cut_vertices)
        self.vertex_cut_pairs = lru_cache(maxsize=None)(self._vertex_cut_pairs)

    def _kappa(self, mask: int) -> int:
        sub, _ = induced_subgraph(self.g, mask)
        return vertex_connectivity(sub)

    def connected_at_least(self, mask: int, k: int) -> bool:
        return mask.bit_count() > k and self.kappa(mask) >= k

    def _cut_vertices(self, mask: int) -> frozenset[int]:
        sub, labels = induced_subgraph(self.g, mask)
        cuts, _ = articulation_points_and_blocks(sub)
        return frozenset(labels[c] for c in cuts)

    def _vertex_cut_pairs(self, mask: int) -> frozenset[tuple[int, int]]:
        out = set()
        for x, y in combinations(iter_bits(mask), 2):
            rest = mask & ~(1 << x) & ~(1 << y)
            if len(component_masks(self.g.adj, rest)) >= 2:
                out.add((x, y))
        return frozenset(out)

    def pieces(self, mask: int) -> list[int]:
        return component_masks(self.g.adj, mask)

    def edges_to(self, v: int, mask: int) -> int:
        return (self.g.adj[v] & mask).bit_count()


def _verts(mask: int) -> tuple[int, ...]:
    return tuple(iter_bits(mask))


def _bit(v: int) -> int:
    return 1 << v


def _profile(g: Graph) -> tuple[int, list[int]]:
    if not g.is_connected():
        raise PreconditionError("graph must be connected")
    cuts, _ = articulation_points_and_blocks(g)
    return vertex_connectivity(g), cuts


# -- k in {n, n - 1, n - 2} and the general lemmas --------------------------------------


def _leaf_count(g: Graph) -> int:
    return sum(1 for v in range(g.n) if g.degree(v) == 1)


def lemma1_tree(g: Graph, k: int) -> bool:
    """For a tree: ``sdiam_k = n - 1`` exactly when the leaf count is at most ``k``."""
    if not g.is_connected() or g.m != g.n - 1:
        raise PreconditionError("lemma1_tree requires a tree")
    if not 2 <= k <= g.n:
        raise PreconditionError(f"k must satisfy 2 <= k <= n, got {k}")
    return _leaf_count(g) <= k


def lemma2_cut_count(g: Graph, k: int) -> bool:
    """``sdiam_{n-k} = n - 1`` exactly when there are at least ``k`` cut vertices."""
    if not 1 <= k <= g.n - 2:
        raise PreconditionError(f"k must satisfy 1 <= k <= n - 2, got {k}")
    _, cuts = _profile(g)
    return len(cuts) >= k


def prop1_connectivity(g: Graph, k: int) -> bool:
    """``sdiam_{n-k+1} = n - k`` exactly when ``kappa >= k``."""
    if not 1 <= k <= g.n - 2:
        raise PreconditionError(f"k must satisfy 1 <= k <= n - 2, got {k}")
    kappa, _ = _profile(g)
    return kappa >= k


def classify_n(g: Graph) -> ClassificationOutcome:
    if g.n < 2:
        raise PreconditionError("k = n needs n >= 2")
    _profile(g)
    return ClassificationOutcome(g.n, g.n - 1, ("COR1_CONNECTED",), Interpretation.LITERAL)


def classify_n_minus_1(g: Graph) -> ClassificationOutcome:
    if g.n < 3:
        raise PreconditionError("k = n - 1 needs n >= 3")
    kappa, _ = _profile(g)
    if kappa >= 2:
        return ClassificationOutcome(g.n - 1, g.n - 2, ("COR2_TWO_CONNECTED",), Interpretation.LITERAL)
    return ClassificationOutcome(g.n - 1, g.n - 1, ("COR2_CUT_VERTEX",), Interpretation.LITERAL)


def classify_n_minus_2(g: Graph) -> ClassificationOutcome:
    n = g.n
    if n < 4:
        raise PreconditionError("k = n - 2 needs n >= 4")
    kappa, cuts = _profile(g)
    if kappa >= 3:
        return ClassificationOutcome(n - 2, n - 3, ("THM2_KAPPA_GE_3",), Interpretation.LITERAL)
    if len(cuts) >= 2:
        return ClassificationOutcome(n - 2, n - 1, ("THM2_CUTS_GE_2",), Interpretation.LITERAL)
    return ClassificationOutcome(n - 2, n - 2, ("THM2_KAPPA2_OR_ONE_CUT",), Interpretation.LITERAL)


# -- k = n - 3 -------------------------------------------------


def obstruction_triple(g: Graph) -> tuple[int, int, int] | None:
    """Lexicographically first 3-set ``R`` with ``d(V - R) >= n - 2``, or None.

    For ``S = V - R`` with ``|R| = 3``, a Steiner tree on at most ``n - 2``
    vertices exists iff ``G - R`` is connected or ``G - P`` is connected for
    some pair ``P`` inside ``R``.  So ``R`` is an obstruction exactly when
    ``G - R`` and all three ``G - P`` are disconnected, and
    ``sdiam_{n-3} >= n - 2`` iff some ``R`` is an obstruction.
    """
    full = g.full_mask
    pair_cut = {}
    for x, y in combinations(range(g.n), 2):
        pair_cut[x, y] = len(component_masks(g.adj, full & ~_bit(x) & ~_bit(y))) >= 2
    for x, y, z in combinations(range(g.n), 3):
        if pair_cut[x, y] and pair_cut[x, z] and pair_cut[y, z]:
            if len(component_masks(g.adj, full & ~_bit(x) & ~_bit(y) & ~_bit(z))) >= 2:
                return (x, y, z)
    return None


def _lemma3_piece_ok(ins: _Inspector, piece: int, u: int, v: int, am: Amendments) -> bool:
    if am.singleton_pieces and piece.bit_count() == 1:
        return True
    a, b = piece | _bit(u), piece | _bit(v)
    if ins.connected_at_least(a, 3) or ins.connected_at_least(b, 3):
        return True
    ka, kb = ins.kappa(a), ins.kappa(b)
    if ka == 2 and kb == 2:
        inner = [p for p in combinations(_verts(piece), 2)]
        common = ins.vertex_cut_pairs(a) & ins.vertex_cut_pairs(b)
        if am.common_cut_universal:
            return not any(p in common for p in inner)
        return any(p not in common for p in inner)
    if ka == 2 and kb == 1:
        cut_b = ins.cut_vertices(b)
        return all(z1 not in cut_b and z2 not in cut_b for z1, z2 in ins.vertex_cut_pairs(a))
    return False


def lemma3_predicate(
    g: Graph,
    interpretation: Interpretation | str = Interpretation.AMENDED,
    amendments: Amendments | None = None,
) -> tuple[bool, StructuralWitness]:
    """Connectivity-1 condition claimed equivalent to ``sdiam_{n-3} = n - 3``.

    Exactly one cut vertex ``u``; every component ``C`` of ``G - u`` of order
    >= 3 has ``H = G[C + u]`` 3-connected, or ``kappa(H) = 2`` with a partner
    ``v`` such that ``{u, v}`` cuts ``H`` and every piece of ``H - {u, v}``
    meets the edge bullet and one connectivity bullet.
    """
    am = resolve(interpretation, amendments)
    kappa, cuts = _profile(g)
    if kappa != 1:
        raise PreconditionError(f"lemma3_predicate needs kappa = 1, got {kappa}")
    if len(cuts) != 1:
        return False, StructuralWitness(violation="NOT_ONE_CUT_VERTEX")
    u = cuts[0]
    ins = _Inspector(g)
    branches = []
    big = [c for c in ins.pieces(g.full_mask & ~_bit(u)) if c.bit_count() >= 3]
    for comp in big:
        h = comp | _bit(u)
        if ins.connected_at_least(h, 3):
            branches.append((_verts(comp), "THREE_CONNECTED"))
            continue
        if ins.kappa(h) != 2:
            return False, StructuralWitness({"u": u}, tuple(branches), "LOW_CONNECTIVITY")
        partner = None
        for v in iter_bits(comp):
            if (min(u, v), max(u, v)) not in ins.vertex_cut_pairs(h):
                continue
            parts = ins.pieces(h & ~_bit(u) & ~_bit(v))
            p = len(parts)
            edge_ok = g.has_edge(u, v) or p >= 3 or (
                p == 2 and (ins.edges_to(v, parts[0]) >= 2 or ins.edges_to(v, parts[1]) >= 2))
            if edge_ok and all(_lemma3_piece_ok(ins, part, u, v, am) for part in parts):
                partner = v
                break
        if partner is None:
            return False, StructuralWitness({"u": u}, tuple(branches), "NO_VALID_PARTNER")
        branches.append((_verts(comp), f"CUT_PAIR:{partner}"))
    if not big:
        if am.vacuous:
            triple = obstruction_triple(g)
            if triple is not None:
                return False, StructuralWitness(dict(zip("xyz", triple), u=u), (), "OBSTRUCTION_TRIPLE")
            return True, StructuralWitness({"u": u}, (((), "TRIPLE_FREE"),))
        return True, StructuralWitness({"u": u}, (((), "VACUOUS"),))
    return True, StructuralWitness({"u": u}, tuple(branches))


def _inner_piece_ok(ins: _Inspector, piece: int, x: int, y: int, am: Amendments) -> bool:
    """The four inner conditions for one piece of ``H - {x, y}``.

    In the two edge conditions the components are those of the augmented piece minus the
    cut vertex ``z`` and minus the anchor itself.
    """
    px, py = piece | _bit(x), piece | _bit(y)
    if ins.connected_at_least(px, 2) or ins.connected_at_least(py, 2):
        return True
    for side, anchor in ((px, x), (py, y)):
        if ins.kappa(side) != 1:
            continue
        target = x if anchor == x or not am.y_edges else y
        ok = True
        for z in ins.cut_vertices(side):
            for part in ins.pieces(side & ~_bit(z) & ~_bit(anchor)):
                if not ins.edges_to(target, part):
                    ok = False
        if ok:
            return True
    return False


def _lemma4_component_ok(ins: _Inspector, comp: int, u: int, v: int, am: Amendments) -> bool:
    h = comp | _bit(u) | _bit(v)
    if ins.connected_at_least(h, 3):
        return True
    if ins.kappa(h) != 2:
        return False
    if not (ins.connected_at_least(comp | _bit(u), 2) and ins.connected_at_least(comp | _bit(v), 2)):
        return False
    for x, y in sorted(ins.vertex_cut_pairs(h)):
        if (x, y) == (min(u, v), max(u, v)):
            continue
        for piece in ins.pieces(h & ~_bit(x) & ~_bit(y)):
            if not _inner_piece_ok(ins, piece, x, y, am):
                return False
    return True


def lemma4_predicate(
    g: Graph,
    interpretation: Interpretation | str = Interpretation.AMENDED,
    amendments: Amendments | None = None,
) -> tuple[bool, StructuralWitness]:
    """Connectivity-2 condition claimed equivalent to ``sdiam_{n-3} = n - 3``.

    Some 2-cut ``{u, v}`` (first in lexicographic order wins) such that every
    component of ``G - {u, v}`` of order >= 3 satisfies condition (1) or (2).
    """
    am = resolve(interpretation, amendments)
    kappa, _ = _profile(g)
    if kappa != 2:
        raise PreconditionError(f"lemma4_predicate needs kappa = 2, got {kappa}")
    ins = _Inspector(g)
    full = g.full_mask
    vacuous_pair = None
    for u, v in sorted(ins.vertex_cut_pairs(full)):
        big = [c for c in ins.pieces(full & ~_bit(u) & ~_bit(v)) if c.bit_count() >= 3]
        if not big:
            if not am.vacuous:
                return True, StructuralWitness({"u": u, "v": v}, (((), "VACUOUS"),))
            if vacuous_pair is None:
                vacuous_pair = (u, v)
            continue
        if all(_lemma4_component_ok(ins, c, u, v, am) for c in big):
            return True, StructuralWitness(
                {"u": u, "v": v}, tuple((_verts(c), "CONDITIONS_HOLD") for c in big))
    if vacuous_pair is not None:
        u, v = vacuous_pair
        triple = obstruction_triple(g)
        if triple is None:
            return True, StructuralWitness({"u": u, "v": v}, (((), "TRIPLE_FREE"),))
        return False, StructuralWitness(dict(zip("xyz", triple), u=u, v=v), (), "OBSTRUCTION_TRIPLE")
    return False, StructuralWitness(violation="NO_VALID_CUT_PAIR")


def classify_n_minus_3(
    g: Graph,
    interpretation: Interpretation | str = Interpretation.AMENDED,
    amendments: Amendments | None = None,
) -> ClassificationOutcome:
    """kappa >= 4, then >= 3 cut vertices, kappa = 3, the connectivity-2 and
    connectivity-1 conditions, and ``n - 2`` by elimination."""
    interpretation = Interpretation(interpretation)
    n = g.n
    if n < 5:
        raise PreconditionError("k = n - 3 needs n >= 5")
    kappa, cuts = _profile(g)

    def out(pred, chain, witness=None):
        return ClassificationOutcome(n - 3, pred, tuple(chain), interpretation, witness)

    if kappa >= 4:
        return out(n - 4, ["PROP2_KAPPA_GE_4"])
    if len(cuts) >= 3:
        return out(n - 1, ["THM3_CUTS_GE_3"])
    if kappa == 3:
        return out(n - 3, ["PROP3_KAPPA_EQ_3"])
    if kappa == 2:
        ok, witness = lemma4_predicate(g, interpretation, amendments)
        if ok:
            return out(n - 3, ["KAPPA_EQ_2", "PROP3_K2_BRANCH"], witness)
        return out(n - 2, ["KAPPA_EQ_2", "LEMMA4_REJECTED", "ELIMINATION_DEFAULT"], witness)
    if len(cuts) == 2:
        return out(n - 2, ["KAPPA_EQ_1", "LEMMA3_REJECTED", "ELIMINATION_DEFAULT"],
                   StructuralWitness(violation="NOT_ONE_CUT_VERTEX"))
    ok, witness = lemma3_predicate(g, interpretation, amendments)
    if ok:
        return out(n - 3, ["KAPPA_EQ_1", "PROP3_K1_BRANCH"], witness)
    return out(n - 2, ["KAPPA_EQ_1", "LEMMA3_REJECTED", "ELIMINATION_DEFAULT"], witness)


def classify_n_minus_3_triple(g: Graph) -> ClassificationOutcome:
    """Cross-check classifier: the clean branches plus the exact triple test."""
    n = g.n
    if n < 5:
        raise PreconditionError("k = n - 3 needs n >= 5")
    kappa, cuts = _profile(g)
    if kappa >= 4:
        return ClassificationOutcome(n - 3, n - 4, ("PROP2_KAPPA_GE_4",), Interpretation.AMENDED)
    if len(cuts) >= 3:
        return ClassificationOutcome(n - 3, n - 1, ("THM3_CUTS_GE_3",), Interpretation.AMENDED)
    triple = obstruction_triple(g)
    if triple is None:
        return ClassificationOutcome(n - 3, n - 3, ("TRIPLE_FREE",), Interpretation.AMENDED)
    witness = StructuralWitness(dict(zip("xyz", triple)), (), "OBSTRUCTION_TRIPLE")
    return ClassificationOutcome(n - 3, n - 2, ("TRIPLE_OBSTRUCTION",), Interpretation.AMENDED, witness)


def single_cut_vertex_rule(g: Graph) -> bool:
    """Exactly one cut vertex ``u``: is ``sdiam_{n-3} = n - 3``?

    True iff no block through ``u`` has a 2-cut avoiding ``u``.  Such a
    2-cut ``{a, b}`` makes ``{u, a, b}`` an obstruction triple, and every
    obstruction triple contains one, since two vertices from different
    blocks never separate ``G``.
    """
    kappa, cuts = _profile(g)
    if kappa != 1 or len(cuts) != 1:
        raise PreconditionError("single_cut_vertex_rule needs exactly one cut vertex")
    u = cuts[0]
    ins = _Inspector(g)
    for comp in ins.pieces(g.full_mask & ~_bit(u)):
        if any(u not in pair for pair in ins.vertex_cut_pairs(comp | _bit(u))):
            return False
    return True


def _cor3_kappa2_bad(ins: _Inspector, comp: int, u: int, v: int) -> bool:
    h = comp | _bit(u) | _bit(v)
    kh = ins.kappa(h)
    if kh == 1:
        return True
    if kh != 2:
        return False
    ku, kv = ins.kappa(comp | _bit(u)), ins.kappa(comp | _bit(v))
    if ku == 1 or kv == 1:
        return True
    if not ku == kv == 2:
        return False
    for x, y in sorted(ins.vertex_cut_pairs(h)):
        for piece in ins.pieces(h & ~_bit(x) & ~_bit(y)):
            side = piece | _bit(x)
            if ins.kappa(side) != 1:
                continue
            for z in ins.cut_vertices(side):
                if any(ins.edges_to(x, part) == 0 for part in ins.pieces(side & ~_bit(z) & ~_bit(x))):
                    return True
    return False


def _cor3_piece_bad(ins: _Inspector, piece: int, u: int, v: int) -> bool:
    a, b = piece | _bit(u), piece | _bit(v)
    ka, kb = ins.kappa(a), ins.kappa(b)
    if ka == 1:
        return True
    if ka == kb == 2:
        inner = list(combinations(_verts(piece), 2))
        common = ins.vertex_cut_pairs(a) & ins.vertex_cut_pairs(b)
        return bool(inner) and all(p in common for p in inner)
    if ka == 2 and kb == 1:
        cut_b = ins.cut_vertices(b)
        return all(y in cut_b or z in cut_b for y, z in ins.vertex_cut_pairs(a) if u not in (y, z))
    return False


def corollary3_predicate(g: Graph) -> bool:
    """Printed conditions claimed equivalent to ``sdiam_{n-3} = n - 2``.

    "For a vertex cut set" in the connectivity-2 clause is read universally;
    in the one-cut-vertex clause some partner ``v`` must admit a bad piece.
    Cross-check only: the classifier reaches ``n - 2`` by elimination.
    """
    if g.n < 5:
        raise PreconditionError("k = n - 3 needs n >= 5")
    kappa, cuts = _profile(g)
    if len(cuts) == 2:
        return True
    ins = _Inspector(g)
    full = g.full_mask
    if kappa == 2:
        for u, v in sorted(ins.vertex_cut_pairs(full)):
            big = [c for c in ins.pieces(full & ~_bit(u) & ~_bit(v)) if c.bit_count() >= 3]
            if not any(_cor3_kappa2_bad(ins, c, u, v) for c in big):
                return False
        return True
    if kappa != 1 or len(cuts) != 1:
        return False
    u = cuts[0]
    for comp in ins.pieces(full & ~_bit(u)):
        if comp.bit_count() < 3:
            continue
        h = comp | _bit(u)
        kh = ins.kappa(h)
        if kh == 1:
            return True
        if kh != 2:
            continue
        pairs = ins.vertex_cut_pairs(h)
        partners = [v for v in iter_bits(comp) if (min(u, v), max(u, v)) in pairs]
        if not partners:
            return True
        for v in partners:
            parts = ins.pieces(h & ~_bit(u) & ~_bit(v))
            if any(_cor3_piece_bad(ins, part, u, v) for part in parts):
                return True
            if not ins.g.has_edge(u, v) and len(parts) == 2 and all(ins.edges_to(v, q) == 1 for q in parts):
                return True
    return False
