"""Multigraph primitives: separations, minors operations, tree counts, duality."""

from __future__ import annotations

import itertools
import random

import networkx as nx
import pytest

from fivesplit.graph_core import (
    MultiGraph,
    blocks,
    boundary,
    connected_components,
    contract_edge,
    delete_edge,
    delete_vertex,
    edge_vertices,
    enumerate_low_order_separations,
    find_isomorphism,
    from_graph6,
    is_connected,
    is_k_connected,
    is_matroid_dual_pair,
    is_proper,
    load_graph,
    parse_graph_text,
    pieces,
    render_graph_text,
    separation_order,
    spanning_tree_count,
    spanning_trees,
)
from fivesplit.named_graphs import (
    complete_bipartite,
    complete_graph,
    cube,
    cycle_graph,
    dual_pairs,
    octahedron,
    path_graph,
    triangle,
    wheel,
)


def _random_multigraph(rng: random.Random, n: int, m: int) -> MultiGraph:
    edges = {}
    for e in range(1, m + 1):
        u = rng.randrange(n)
        v = rng.randrange(n)
        edges[e] = (u, v) if u <= v else (v, u)
    return MultiGraph(range(n), edges)


def test_boundary_on_a_path():
    g = path_graph(4)  # edges 1:(0,1) 2:(1,2) 3:(2,3)
    a = {1, 2}
    assert edge_vertices(g, a) == frozenset({0, 1, 2})
    assert boundary(g, a) == frozenset({2})
    assert separation_order(g, a) == 1


def test_separation_orders():
    c4 = cycle_graph(4)
    assert separation_order(c4, {1, 2}) == 2
    k4 = complete_graph(4)
    star = frozenset(k4.incident_edges(0))
    assert len(star) == 3
    assert separation_order(k4, star) == 3


def test_is_proper():
    k4 = complete_graph(4)
    assert not is_proper(k4, {1})
    c = cube()
    # a face is not proper: each face vertex also meets a vertical edge
    face = frozenset(e for e, (u, v) in c.edges.items() if {u, v} <= {0, 1, 2, 3})
    assert len(face) == 4
    assert not is_proper(c, face)
    # the edges around one cube edge leave private vertices on both sides
    cap = frozenset(c.incident_edges(0)) | frozenset(c.incident_edges(1))
    assert is_proper(c, cap)
    assert not is_proper(c, c.edge_ids())
    assert not is_proper(c, frozenset())


def test_contract_parallel_pair_to_a_point():
    g = MultiGraph([0, 1], {1: (0, 1), 2: (0, 1)})
    h = contract_edge(g, 1)
    # the surviving parallel edge becomes a loop and is removed
    assert h.m == 0
    assert h.n == 1


def test_edge_ids_survive_operations():
    g = complete_graph(4)
    h = delete_edge(g, 3)
    assert h.edge_ids() == g.edge_ids() - {3}
    h = contract_edge(g, 1)
    assert 1 not in h.edge_ids()
    assert h.edge_ids() <= g.edge_ids()
    h = delete_vertex(g, 0)
    assert h.n == 3
    assert h.edge_ids() == {e for e in g.edges if 0 not in g.endpoints(e)}


def test_deletion_contraction_tree_counts():
    rng = random.Random(7)
    for _ in range(40):
        g = _random_multigraph(rng, rng.randint(2, 5), rng.randint(1, 7))
        for e in g.edges:
            if g.is_loop(e):
                continue
            total = spanning_tree_count(g)
            assert total == spanning_tree_count(delete_edge(g, e)) + spanning_tree_count(
                contract_edge(g, e)
            )


def test_spanning_tree_counts():
    assert spanning_tree_count(complete_graph(5)) == 125
    assert spanning_tree_count(cycle_graph(6)) == 6
    assert spanning_tree_count(path_graph(4)) == 1
    two_cycle = MultiGraph([0, 1], {1: (0, 1), 2: (0, 1)})
    assert spanning_tree_count(two_cycle) == 2
    disconnected = MultiGraph([0, 1, 2], {1: (0, 1)})
    assert spanning_tree_count(disconnected) == 0


def test_spanning_trees_enumeration_matches_determinant():
    rng = random.Random(11)
    for _ in range(25):
        g = _random_multigraph(rng, rng.randint(2, 5), rng.randint(1, 8))
        trees = list(spanning_trees(g))
        assert len(trees) == len(set(trees))
        assert len(trees) == spanning_tree_count(g)
        for t in trees:
            assert len(t) == g.n - 1


def test_connectivity_helpers():
    assert is_connected(triangle())
    assert not is_connected(MultiGraph([0, 1, 2], {1: (0, 1)}))
    comps = connected_components(MultiGraph([0, 1, 2, 3], {1: (0, 1), 2: (2, 3)}))
    assert sorted(sorted(c) for c in comps) == [[0, 1], [2, 3]]
    assert is_k_connected(complete_graph(4), 3)
    assert not is_k_connected(cycle_graph(4), 3)
    assert is_k_connected(cube(), 3)
    assert not is_k_connected(cube(), 4)
    assert is_k_connected(complete_graph(5), 4)
    assert not is_k_connected(wheel(4), 4)


def test_pieces_partition_the_edges():
    g = wheel(5)
    for x in itertools.combinations(sorted(g.vertices), 2):
        ps = pieces(g, x)
        union = frozenset().union(*ps) if ps else frozenset()
        assert union == g.edge_ids()
        assert sum(len(p) for p in ps) == g.m


def _brute_force_separations(g: MultiGraph, max_order: int):
    all_edges = sorted(g.edges)
    out = set()
    for r in range(len(all_edges) + 1):
        for a in itertools.combinations(all_edges, r):
            a = frozenset(a)
            b = g.edge_ids() - a
            if len(boundary(g, a)) <= max_order:
                out.add(a if sorted(a) <= sorted(b) else b)
    return out


@pytest.mark.parametrize("k", [0, 1, 2])
def test_separation_enumeration_matches_brute_force(k):
    for g in [cycle_graph(4), complete_graph(4), path_graph(4), wheel(4)]:
        got = {s.side_a for s in enumerate_low_order_separations(g, k)}
        assert got == _brute_force_separations(g, k)


def test_c4_separations_are_path_pairs():
    g = cycle_graph(4)
    proper = [
        s
        for s in enumerate_low_order_separations(g, 2)
        if is_proper(g, s.side_a) and is_proper(g, s.side_b)
    ]
    for s in proper:
        # both sides of every proper order-2 separation of a cycle are paths
        for side in (s.side_a, s.side_b):
            sub = MultiGraph(g.vertices, {e: g.edges[e] for e in side})
            assert spanning_tree_count(
                MultiGraph(edge_vertices(g, side), {e: g.edges[e] for e in side})
            ) == 1
    assert len(proper) >= 2


def test_k4_has_no_proper_low_order_separation():
    g = complete_graph(4)
    for s in enumerate_low_order_separations(g, 2):
        assert not (len(s.side_a) >= 2 and len(s.side_b) >= 2)


def test_blocks():
    # two triangles sharing a vertex plus a pendant bridge
    g = MultiGraph(
        range(6),
        {
            1: (0, 1),
            2: (1, 2),
            3: (0, 2),
            4: (2, 3),
            5: (3, 4),
            6: (2, 4),
            7: (4, 5),
        },
    )
    got = sorted(sorted(b) for b in blocks(g))
    assert got == [[1, 2, 3], [4, 5, 6], [7]]
    lp = MultiGraph([0], {1: (0, 0)})
    assert blocks(lp) == [frozenset({1})]


def test_triangle_dual_to_parallel_triple():
    tri = triangle()
    band = MultiGraph([0, 1], {1: (0, 1), 2: (0, 1), 3: (0, 1)})
    assert is_matroid_dual_pair(tri, band, {1: 1, 2: 2, 3: 3})


def test_k4_is_not_self_dual_under_identity():
    k4 = complete_graph(4)
    assert not is_matroid_dual_pair(k4, k4, {e: e for e in k4.edges})


def test_named_dual_pairs_validate():
    names = set()
    for name, g, h, bij in dual_pairs():
        assert is_matroid_dual_pair(g, h, bij)
        names.add(name)
    assert "cube/octahedron" in names or any("cube" in n for n in names)


def test_find_isomorphism_on_relabelled_graphs():
    rng = random.Random(3)
    for g in [cube(), wheel(5), complete_bipartite(3, 3), octahedron()]:
        perm = dict(zip(sorted(g.vertices), rng.sample(sorted(g.vertices), g.n)))
        edges = {
            e + 10: (min(perm[u], perm[v]), max(perm[u], perm[v]))
            for e, (u, v) in g.edges.items()
        }
        h = MultiGraph(g.vertices, edges)
        f = find_isomorphism(g, h)
        assert f is not None
        for u, v in g.edges.values():
            assert any(
                set(h.endpoints(e)) == {f[u], f[v]} for e in h.edges
            )


def test_find_isomorphism_rejects_distinct_graphs():
    assert find_isomorphism(complete_bipartite(3, 3), prism_like()) is None
    assert find_isomorphism(cycle_graph(6), path_graph(7)) is None
    # same degree sequence, different graphs
    g = cycle_graph(6)
    h = MultiGraph(range(6), {1: (0, 1), 2: (1, 2), 3: (0, 2), 4: (3, 4), 5: (4, 5), 6: (3, 5)})
    assert find_isomorphism(g, h) is None


def prism_like() -> MultiGraph:
    from fivesplit.named_graphs import prism

    return prism()


def test_find_isomorphism_agrees_with_networkx():
    rng = random.Random(5)
    for _ in range(60):
        n = rng.randint(3, 6)
        g = _random_simple(rng, n)
        h = _random_simple(rng, n)
        mine = find_isomorphism(g, h) is not None
        ref = nx.is_isomorphic(_to_nx(g), _to_nx(h))
        assert mine == ref


def _random_simple(rng: random.Random, n: int) -> MultiGraph:
    pairs = list(itertools.combinations(range(n), 2))
    chosen = [p for p in pairs if rng.random() < 0.5]
    return MultiGraph(range(n), {i + 1: p for i, p in enumerate(chosen)})


def _to_nx(g: MultiGraph) -> nx.Graph:
    out = nx.Graph()
    out.add_nodes_from(g.vertices)
    out.add_edges_from(g.edges.values())
    return out


def test_graph6_matches_networkx():
    rng = random.Random(9)
    for _ in range(40):
        n = rng.randint(1, 9)
        g = _random_simple(rng, n)
        line = nx.to_graph6_bytes(_to_nx(g), header=False).decode().strip()
        back = from_graph6(line)
        assert back.n == g.n
        assert find_isomorphism(back, g) is not None


def test_text_format_round_trip():
    g = wheel(4)
    text = render_graph_text(g, contract_protected=[1, 2], delete_protected=[5])
    back, prot = parse_graph_text(text)
    assert back.key() == g.key()
    assert prot["c"] == frozenset({1, 2})
    assert prot["d"] == frozenset({5})


def test_text_format_rejects_bad_input():
    with pytest.raises(ValueError):
        parse_graph_text("")
    with pytest.raises(ValueError):
        parse_graph_text("2\n1 0 1\n")
    with pytest.raises(ValueError):
        parse_graph_text("2 1\n1 0 5\n")
    with pytest.raises(ValueError):
        parse_graph_text("2 1\n1 0 1\nq: 1\n")
    with pytest.raises(ValueError):
        parse_graph_text("2 1\n1 0 1\nc: 9\n")


def test_load_graph_accepts_both_formats():
    g1, _ = load_graph(render_graph_text(triangle()))
    assert g1.key() == triangle().key()
    line = nx.to_graph6_bytes(_to_nx(complete_graph(4)), header=False).decode().strip()
    g2, prot = load_graph(line)
    assert find_isomorphism(g2, complete_graph(4)) is not None
    assert prot["c"] == frozenset()
