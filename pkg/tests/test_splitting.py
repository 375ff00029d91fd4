"""Splitting of 5-edge configurations, protections, and plain-graph association."""

from __future__ import annotations

import itertools
import random

import pytest

from fivesplit.graph_core import (
    MultiGraph,
    contract_edge,
    delete_edge,
    is_connected,
)
from fivesplit.matroid import common_tree_exists
from fivesplit.named_graphs import (
    complete_bipartite,
    complete_graph,
    cube,
    cycle_graph,
    octahedron,
    prism,
    wheel,
    wheel_rim_edges,
    wheel_spoke_edges,
)
from fivesplit.search import _connected_census
from fivesplit.splitting import (
    EnhancedGraph,
    GADGETS,
    association_roundtrip_ok,
    config_splits,
    enhanced_config_splits,
    enhanced_splits,
    from_enhanced,
    graph_splits,
    plain,
    to_enhanced,
    witness_holds,
)

K33_WITNESS = frozenset({1, 2, 4, 5, 9})


def _pairings(rest):
    a = rest[0]
    for b in rest[1:]:
        pair1 = (a, b)
        pair2 = tuple(f for f in rest[1:] if f != b)
        yield pair1, pair2


def _no_common_tree(g: MultiGraph, s1, s2) -> bool:
    ids = g.edge_ids()
    if not (set(s1) <= ids and set(s2) <= ids):
        # an operated-away configuration edge kills every candidate tree pair
        return True
    return not common_tree_exists(g, s1, s2)


def _splits_via_trees(g: MultiGraph, config) -> bool:
    """Independent decision route: a configuration splits exactly when one of
    its thirty tree-pair conditions fails, by the spanning-tree expansion of
    the corresponding Dodgson polynomial."""
    s = sorted(config)
    for e in s:
        rest = [f for f in s if f != e]
        for pair1, pair2 in _pairings(rest):
            if _no_common_tree(contract_edge(g, e), pair1, pair2):
                return True
            if _no_common_tree(delete_edge(g, e), pair1, pair2):
                return True
    return False


def test_k4_splits_everything():
    g = complete_graph(4)
    for s in itertools.combinations(sorted(g.edges), 5):
        verdict = config_splits(g, s)
        assert verdict.splits
        assert witness_holds(plain(g), s, verdict.witness)
    ok, wit = graph_splits(g)
    assert ok and wit is None


def test_k5_has_a_nonsplit_configuration():
    g = complete_graph(5)
    ok, wit = graph_splits(g)
    assert not ok
    assert wit == frozenset({1, 2, 3, 7, 9})
    assert not config_splits(g, wit).splits
    assert config_splits(g, wit).witness is None


def test_f0_verdicts():
    assert not graph_splits(complete_bipartite(3, 3))[0]
    assert not graph_splits(octahedron())[0]
    assert not graph_splits(cube())[0]
    assert graph_splits(wheel(5))[0]
    assert graph_splits(prism())[0]


def test_config_validation():
    g = complete_graph(4)
    with pytest.raises(ValueError):
        config_splits(g, [1, 2, 3])
    with pytest.raises(ValueError):
        config_splits(g, [1, 2, 3, 4, 99])
    with pytest.raises(ValueError):
        config_splits(g, [1, 2, 3, 4, 5, 6])


def test_witnesses_verify_and_tampering_fails():
    g = prism()
    for s in itertools.combinations(sorted(g.edges), 5):
        verdict = config_splits(g, s)
        assert verdict.splits
        w = verdict.witness
        assert witness_holds(plain(g), s, w)
        import dataclasses

        bad = dataclasses.replace(w, side_a=w.side_a | w.side_b, side_b=frozenset())
        assert not witness_holds(plain(g), s, bad)


def test_two_decision_routes_agree_exhaustively():
    for m in range(5, 9):
        for g in _connected_census(m):
            for s in itertools.combinations(sorted(g.edges), 5):
                assert config_splits(g, s).splits == _splits_via_trees(g, s)


def test_two_decision_routes_agree_on_multigraphs():
    rng = random.Random(19)
    done = 0
    while done < 12:
        n = rng.randint(3, 5)
        m = rng.randint(5, 7)
        edges = {}
        for e in range(1, m + 1):
            u = rng.randrange(n)
            v = rng.randrange(n)
            if u == v:
                v = (v + 1) % n
            edges[e] = (min(u, v), max(u, v))
        g = MultiGraph(range(n), edges)
        if not is_connected(g):
            continue
        for s in itertools.combinations(sorted(g.edges), 5):
            assert config_splits(g, s).splits == _splits_via_trees(g, s)
        done += 1


def test_splitting_is_minor_closed():
    rng = random.Random(29)
    for base in [wheel(4), prism(), wheel(5)]:
        assert graph_splits(base)[0]
        for _ in range(10):
            g = base
            for _ in range(rng.randint(1, 3)):
                if g.m <= 5:
                    break
                e = rng.choice(sorted(g.edges))
                if rng.random() < 0.5 and not g.is_loop(e):
                    g = contract_edge(g, e)
                else:
                    g = delete_edge(g, e)
            assert graph_splits(g)[0]


def test_unprotected_enhanced_matches_plain():
    rng = random.Random(37)
    hosts = _connected_census(6) + _connected_census(7)
    for g in rng.sample(hosts, 25):
        eg = plain(g)
        for s in itertools.combinations(sorted(g.edges), 5):
            assert enhanced_config_splits(eg, s).splits == config_splits(g, s).splits
        assert enhanced_splits(eg)[0] == graph_splits(g)[0]


def test_wheel_minimal_protections_on_w4():
    g = wheel(4)
    s = frozenset({1, 2, 5, 6, 7})  # rim 1,2 and spokes at vertices 0,1,2
    c = frozenset({1, 2, 5, 6, 7})
    d = frozenset({1, 2, 6})
    eg = EnhancedGraph(g, c, d)
    assert not enhanced_config_splits(eg, s).splits
    # every single protection is load-bearing: removing any one splits
    for e in sorted(c):
        weaker = EnhancedGraph(g, c - {e}, d)
        assert enhanced_config_splits(weaker, s).splits
    for e in sorted(d):
        weaker = EnhancedGraph(g, c, d - {e})
        assert enhanced_config_splits(weaker, s).splits


def test_fully_protected_k4():
    g = complete_graph(4)
    for s in itertools.combinations(sorted(g.edges), 5):
        ss = frozenset(s)
        eg = EnhancedGraph(g, ss, ss)
        assert not enhanced_config_splits(eg, ss).splits
    eg = EnhancedGraph(g, frozenset({1, 2, 3, 4, 5}), frozenset({1, 2, 3, 4, 5}))
    assert eg.weight == 16
    assert not enhanced_splits(eg)[0]


def test_protections_are_monotone():
    # adding protections can only help: the non-split verdict is preserved
    g = wheel(4)
    rng = random.Random(43)
    for _ in range(40):
        s = frozenset(rng.sample(sorted(g.edges), 5))
        c = frozenset(e for e in s if rng.random() < 0.5)
        d = frozenset(e for e in s if rng.random() < 0.5)
        if enhanced_config_splits(EnhancedGraph(g, c, d), s).splits:
            continue
        c2 = c | frozenset(rng.sample(sorted(s), 2))
        d2 = d | frozenset(rng.sample(sorted(s), 2))
        assert not enhanced_config_splits(EnhancedGraph(g, c2, d2), s).splits


def test_protected_sets_must_be_edges():
    with pytest.raises(ValueError):
        EnhancedGraph(complete_graph(4), frozenset({99}), frozenset())


def test_to_enhanced_rejects_splitting_configurations():
    g = complete_graph(4)
    with pytest.raises(ValueError):
        to_enhanced(g, [1, 2, 3, 4, 5])


def test_to_enhanced_identity_on_three_connected_core():
    g = complete_bipartite(3, 3)
    eg, s = to_enhanced(g, K33_WITNESS)
    assert s == K33_WITNESS
    assert eg.graph.key() == g.key()
    assert eg.contract_protected == frozenset()
    assert eg.delete_protected == frozenset()


def test_doubled_edge_collapses_to_delete_proof():
    g = complete_bipartite(3, 3)
    new_id = max(g.edges) + 1
    edges = dict(g.edges)
    edges[new_id] = g.edges[1]  # double the configuration edge 1
    g2 = MultiGraph(g.vertices, edges)
    assert not config_splits(g2, K33_WITNESS).splits
    eg, s = to_enhanced(g2, K33_WITNESS)
    assert eg.graph.m == 9
    # the parallel pair collapsed onto a delete-proof configuration edge
    survivor = next(iter(s - frozenset({2, 4, 5, 9})))
    assert survivor in eg.delete_protected
    assert survivor not in eg.contract_protected
    assert association_roundtrip_ok(g2, K33_WITNESS)


def test_subdivided_edge_collapses_to_contract_proof():
    g = complete_bipartite(3, 3)
    u, v = g.edges[1]
    mid = max(g.vertices) + 1
    new_id = max(g.edges) + 1
    edges = dict(g.edges)
    edges[1] = (u, mid)
    edges[new_id] = (mid, v)
    g2 = MultiGraph(list(g.vertices) + [mid], edges)
    s2 = K33_WITNESS  # edge 1 now names one half of the subdivision
    assert not config_splits(g2, s2).splits
    eg, s = to_enhanced(g2, s2)
    assert eg.graph.m == 9
    survivor = next(iter(s - frozenset({2, 4, 5, 9})))
    assert survivor in eg.contract_protected
    assert survivor not in eg.delete_protected
    assert association_roundtrip_ok(g2, s2)


def test_from_enhanced_weight_is_edge_count():
    g = complete_graph(4)
    s = frozenset({1, 2, 3, 4, 5})
    eg = EnhancedGraph(g, s, s)
    for gadget in GADGETS:
        out, s_out = from_enhanced(eg, s, gadget)
        assert out.m == eg.weight == 16
        assert len(s_out) == 5
        back, s_back = to_enhanced(out, s_out)
        from fivesplit.minors import canonical_enhanced_key

        assert canonical_enhanced_key(back, s_back) == canonical_enhanced_key(eg, s)


def test_from_enhanced_rejects_unknown_gadget():
    g = complete_graph(4)
    s = frozenset({1, 2, 3, 4, 5})
    with pytest.raises(ValueError):
        from_enhanced(EnhancedGraph(g, s, s), s, "bowtie")


def test_association_roundtrip_on_witnesses():
    assert association_roundtrip_ok(complete_bipartite(3, 3), K33_WITNESS)
    g = complete_graph(5)
    wit = graph_splits(g)[1]
    assert wit is not None
    assert association_roundtrip_ok(g, wit)
