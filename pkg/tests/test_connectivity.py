from __future__ import annotations

from itertools import combinations

import pytest

import oracles
from conftest import connected
from steineraudit.connectivity import (
    articulation_points_and_blocks,
    cut_vertices,
    disconnects,
    is_k_connected,
    profile,
    two_cuts,
    vertex_connectivity,
)
from steineraudit.graph import (
    GraphError,
    complete_graph,
    components,
    cycle_graph,
    from_edge_list,
    path_graph,
    petersen_graph,
)


def test_profile_examples():
    p = profile(path_graph(5))
    assert (p.kappa, p.cut_vertices, p.leaf_count) == (1, (1, 2, 3), 2)
    c = profile(cycle_graph(6))
    assert c.kappa == 2 and c.cut_vertices == () and len(c.blocks) == 1
    k = profile(complete_graph(5))
    assert k.kappa == 4 and k.cut_vertices == ()


def test_vertex_connectivity_examples():
    # brute-force values from tests/oracles.py
    assert vertex_connectivity(petersen_graph()) == 3
    assert vertex_connectivity(complete_graph(4).without_edge(0, 1)) == 2
    two_triangles = from_edge_list(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)])
    assert vertex_connectivity(two_triangles) == 0


def test_small_conventions():
    assert vertex_connectivity(complete_graph(1)) == 0
    assert vertex_connectivity(complete_graph(2)) == 1
    assert is_k_connected(complete_graph(4), 3)
    assert not is_k_connected(cycle_graph(5), 3)
    assert not is_k_connected(complete_graph(3), 3)
    with pytest.raises(GraphError):
        is_k_connected(complete_graph(3), -1)


def test_two_cuts_examples():
    assert two_cuts(cycle_graph(5)) == [(0, 2), (0, 3), (1, 3), (1, 4), (2, 4)]
    assert two_cuts(complete_graph(4)) == []
    assert two_cuts(path_graph(4)) == [(0, 2), (1, 2), (1, 3)]
    with pytest.raises(GraphError):
        two_cuts(from_edge_list(3, [(0, 1)]))


@pytest.mark.parametrize("n", range(1, 8))
def test_against_brute_force(n):
    for g in connected(n):
        edges = g.edges()
        assert vertex_connectivity(g) == oracles.vertex_connectivity(n, edges)
        assert cut_vertices(g) == oracles.cut_vertices(n, edges)
        assert two_cuts(g) == oracles.two_cuts(n, edges)


def test_connectivity_matches_definition_n8():
    # kappa and cut vertices against the deletion definition on every graph, n = 8
    for g in connected(8):
        kappa = vertex_connectivity(g)
        full = g.full_mask
        for size in range(kappa):
            for cut in combinations(range(8), size):
                assert not disconnects(g, sum(1 << v for v in cut))
        if kappa < 7:
            assert any(disconnects(g, sum(1 << v for v in cut)) for cut in combinations(range(8), kappa))
        cuts = [v for v in range(8) if len(components(g, full & ~(1 << v))) >= 2]
        assert cut_vertices(g) == cuts


def test_blocks_partition_edges():
    for n in (5, 6, 7):
        for g in connected(n):
            cuts, blocks = articulation_points_and_blocks(g)
            owner = {}
            for b in blocks:
                for u, v in combinations(b, 2):
                    if g.has_edge(u, v):
                        assert (u, v) not in owner
                        owner[u, v] = b
            assert sorted(owner) == g.edges()
            for a, b in combinations(blocks, 2):
                shared = set(a) & set(b)
                assert len(shared) <= 1 and shared <= set(cuts)


def test_profile_invariants():
    for g in connected(6):
        p = profile(g)
        assert p.is_connected and p.kappa >= 1
        assert bool(p.cut_vertices) == (p.kappa == 1 and g.n >= 3)
        assert p.leaf_count == sum(1 for v in range(g.n) if g.degree(v) == 1)
    isolated = from_edge_list(3, [(0, 1)])
    assert profile(isolated).kappa == 0 and not profile(isolated).is_connected
