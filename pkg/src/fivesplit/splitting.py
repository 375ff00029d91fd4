"""Splitting of five-edge configurations, with and without protections.

A 5-configuration S in a graph G splits with respect to a separation (A, B)
when either the separation has order <= 1 and both sides contain an edge of S,
or it has order <= 2 and one side contains exactly two edges of S and the
other at least two.  S splits outright when such a separation exists in G
itself, or in G - e / G / e for some e in S with the leftover configuration
S - e (edges erased by the operation leave the configuration).

An enhanced graph carries two protection sets: contract-protected edges may
not be contracted and delete-protected edges may not be deleted, which removes
the corresponding derived graphs from the quantifier above.

Separations of order <= 2 are scanned via vertex cuts: for every cut X with
|X| <= 2 the candidate sides are unions of the pieces of G relative to X,
so per cut only the multiset of per-piece configuration counts matters:
a side meeting S on both sides exists iff two pieces are hit (order <= 1),
and a side with exactly two S-edges exists iff some piece holds exactly two
or two pieces hold exactly one each.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator

from .graph_core import (
    EdgeSubset,
    MultiGraph,
    blocks,
    boundary,
    connected_components,
    contract_edge,
    delete_edge,
    is_connected,
    is_k_connected,
    pieces,
)


@dataclass(frozen=True)
class EnhancedGraph:
    """A multigraph with contract-protected and delete-protected edge sets."""

    graph: MultiGraph
    contract_protected: EdgeSubset = frozenset()
    delete_protected: EdgeSubset = frozenset()

    def __post_init__(self) -> None:
        edges = self.graph.edge_ids()
        if not self.contract_protected <= edges or not self.delete_protected <= edges:
            raise ValueError("protected sets must be edges of the graph")

    @property
    def weight(self) -> int:
        return self.graph.m + len(self.contract_protected) + len(self.delete_protected)


def plain(g: MultiGraph) -> EnhancedGraph:
    return EnhancedGraph(g, frozenset(), frozenset())


@dataclass(frozen=True)
class SplitWitness:
    """A verifiable split certificate.

    operation/edge name the derived graph ("none" means the graph itself);
    side_a/side_b partition the derived graph's edges; config_in_a/config_in_b
    count the leftover configuration on each side.
    """

    operation: str
    edge: int | None
    side_a: EdgeSubset
    side_b: EdgeSubset
    boundary: frozenset[int]
    config_in_a: int
    config_in_b: int


@dataclass(frozen=True)
class SplitVerdict:
    splits: bool
    witness: SplitWitness | None


# -- cut/piece structures, cached per graph ----------------------------------


class _Structure:
    __slots__ = ("graph", "cuts1", "cuts2", "bad_memo", "derived")

    def __init__(self, g: MultiGraph):
        self.graph = g
        verts = sorted(g.vertices)
        self.cuts1 = [pieces(g, ())] + [pieces(g, (v,)) for v in verts]
        self.cuts2 = [pieces(g, x) for x in itertools.combinations(verts, 2)]
        self.bad_memo: dict[frozenset[int], frozenset[int] | None] = {}
        self.derived: dict[tuple[str, int], MultiGraph] = {}


_CACHE: dict[tuple, _Structure] = {}
_CACHE_CAP = 60000


def _structure(g: MultiGraph) -> _Structure:
    key = g.key()
    st = _CACHE.get(key)
    if st is None:
        if len(_CACHE) >= _CACHE_CAP:
            _CACHE.clear()
        st = _Structure(g)
        _CACHE[key] = st
    return st


def _bad_side(g: MultiGraph, s: frozenset[int]) -> frozenset[int] | None:
    """A side of a bad separation for the configuration s in g, or None.

    Bad means: order <= 1 with s on both sides, or order <= 2 with exactly two
    s-edges on one side and at least two on the other.
    """
    st = _structure(g)
    if s in st.bad_memo:
        return st.bad_memo[s]
    side: frozenset[int] | None = None
    t = len(s)
    if t >= 2:
        for ps in st.cuts1:
            hit = [p for p in ps if p & s]
            if len(hit) >= 2:
                side = hit[0]
                break
    if side is None and t >= 4:
        for ps in st.cuts2:
            pair: list[frozenset[int]] = []
            for p in ps:
                c = len(p & s)
                if c == 2:
                    side = p
                    break
                if c == 1:
                    pair.append(p)
                    if len(pair) == 2:
                        side = pair[0] | pair[1]
                        break
            if side is not None:
                break
    st.bad_memo[s] = side
    return side


def _derived(g: MultiGraph, op: str, e: int) -> MultiGraph:
    st = _structure(g)
    child = st.derived.get((op, e))
    if child is None:
        child = delete_edge(g, e) if op == "delete" else contract_edge(g, e)
        st.derived[(op, e)] = child
    return child


def _witness(
    op: str, e: int | None, child: MultiGraph, s_child: frozenset[int], side: frozenset[int]
) -> SplitWitness:
    other = child.edge_ids() - side
    return SplitWitness(
        operation=op,
        edge=e,
        side_a=side,
        side_b=other,
        boundary=boundary(child, side),
        config_in_a=len(side & s_child),
        config_in_b=len(other & s_child),
    )


def _engine(
    g: MultiGraph,
    s: frozenset[int],
    c_prot: frozenset[int],
    d_prot: frozenset[int],
) -> SplitVerdict:
    side = _bad_side(g, s)
    if side is not None:
        return SplitVerdict(True, _witness("none", None, g, s, side))
    for e in sorted(s):
        if e not in d_prot:
            child = _derived(g, "delete", e)
            s2 = s - {e}
            side = _bad_side(child, s2)
            if side is not None:
                return SplitVerdict(True, _witness("delete", e, child, s2, side))
        if e not in c_prot and not g.is_loop(e):
            child = _derived(g, "contract", e)
            s2 = (s - {e}) & child.edge_ids()
            side = _bad_side(child, s2)
            if side is not None:
                return SplitVerdict(True, _witness("contract", e, child, s2, side))
    return SplitVerdict(False, None)


def _check_config(g: MultiGraph, config: Iterable[int]) -> frozenset[int]:
    s = frozenset(config)
    if len(s) != 5:
        raise ValueError("a configuration has five distinct edges")
    if not s <= g.edge_ids():
        raise ValueError("configuration edges must belong to the graph")
    return s


def config_splits(g: MultiGraph, config: Iterable[int]) -> SplitVerdict:
    """Does the 5-configuration split in the plain graph?"""
    s = _check_config(g, config)
    return _engine(g, s, frozenset(), frozenset())


def enhanced_config_splits(eg: EnhancedGraph, config: Iterable[int]) -> SplitVerdict:
    """Splitting with the protected derived graphs excluded."""
    s = _check_config(eg.graph, config)
    return _engine(eg.graph, s, eg.contract_protected, eg.delete_protected)


def _all_configs(g: MultiGraph) -> Iterator[frozenset[int]]:
    for s in itertools.combinations(sorted(g.edges), 5):
        yield frozenset(s)


def graph_splits(g: MultiGraph) -> tuple[bool, frozenset[int] | None]:
    """Whether every 5-configuration splits; if not, the first failing one.

    Configurations are scanned in sorted edge-id order.  Graphs with fewer
    than five edges split vacuously; disconnected graphs need no special
    handling because cross-component configurations split at order 0.
    """
    for s in _all_configs(g):
        if not _engine(g, s, frozenset(), frozenset()).splits:
            return False, s
    return True, None


def enhanced_splits(eg: EnhancedGraph) -> tuple[bool, frozenset[int] | None]:
    for s in _all_configs(eg.graph):
        if not _engine(eg.graph, s, eg.contract_protected, eg.delete_protected).splits:
            return False, s
    return True, None


def witness_holds(
    eg: EnhancedGraph, config: Iterable[int], w: SplitWitness
) -> bool:
    """Re-verify a split witness from the definition; used by tests."""
    s = frozenset(config)
    g = eg.graph
    if w.operation == "none":
        child, s2 = g, s
    elif w.operation == "delete":
        if w.edge not in s or w.edge in eg.delete_protected:
            return False
        child, s2 = delete_edge(g, w.edge), s - {w.edge}
    elif w.operation == "contract":
        if w.edge not in s or w.edge in eg.contract_protected or g.is_loop(w.edge):
            return False
        child = contract_edge(g, w.edge)
        s2 = (s - {w.edge}) & child.edge_ids()
    else:
        return False
    if w.side_a | w.side_b != child.edge_ids() or w.side_a & w.side_b:
        return False
    bnd = boundary(child, w.side_a)
    if bnd != w.boundary:
        return False
    ca, cb = len(w.side_a & s2), len(w.side_b & s2)
    if (ca, cb) != (w.config_in_a, w.config_in_b):
        return False
    if len(bnd) <= 1 and ca >= 1 and cb >= 1:
        return True
    return len(bnd) <= 2 and min(ca, cb) == 2 and max(ca, cb) >= 2


# -- association with plain graphs (lobe collapse and gadget expansion) ------


def to_enhanced(g: MultiGraph, config: Iterable[int]) -> tuple[EnhancedGraph, frozenset[int]]:
    """Collapse a non-split plain configuration to its enhanced 3-connected form.

    The block of G containing S is decomposed into maximal lobes: unions of
    sides of order-<=2 separations carrying at most one S-edge.  Each maximal
    lobe with more than one edge is replaced by a single edge between its two
    boundary vertices; the replacement inherits membership in the
    configuration and earns protections:

      * delete protection when the lobe minus S connects the two boundary
        vertices (the lobe survives deletion of its S-edge), and
      * contract protection when its S-edge does not itself join the two
        boundary vertices (the lobe survives contraction of its S-edge).

    Raises ValueError when S splits (no enhanced form exists then).
    """
    s = _check_config(g, config)
    if not is_connected(g):
        raise ValueError("the underlying graph must be connected")
    if _engine(g, s, frozenset(), frozenset()).splits:
        raise ValueError("the configuration splits; it has no enhanced form")
    holders = [b for b in blocks(g) if b & s]
    assert len(holders) == 1, "a non-split configuration lives in one block"
    block_edges = holders[0]
    gp = MultiGraph(
        {v for e in block_edges for v in g.endpoints(e)},
        {e: g.edges[e] for e in block_edges},
    )
    lobes: set[frozenset[int]] = set()
    all_block = gp.edge_ids()
    for x_size in range(3):
        for x in itertools.combinations(sorted(gp.vertices), x_size):
            piece_sets = pieces(gp, x)
            for bits in range(1, 1 << len(piece_sets)):
                side = frozenset().union(
                    *(piece_sets[i] for i in range(len(piece_sets)) if bits >> i & 1)
                )
                if (
                    side != all_block
                    and len(side & s) <= 1
                    and len(boundary(gp, side)) <= 2
                ):
                    lobes.add(side)
    maximal: dict[int, frozenset[int]] = {}
    for e in sorted(gp.edges):
        m_e = frozenset([e]).union(*(lb for lb in lobes if e in lb))
        assert len(m_e & s) <= 1 and len(boundary(gp, m_e)) <= 2, (
            "union of lobes through an edge must again be a lobe"
        )
        maximal[e] = m_e
    distinct = sorted({m for m in maximal.values()}, key=sorted)
    assert sorted(e for lb in distinct for e in lb) == sorted(gp.edges), (
        "maximal lobes must partition the block's edges"
    )
    new_edges: dict[int, tuple[int, int]] = {}
    s_out: set[int] = set()
    c_out: set[int] = set()
    d_out: set[int] = set()
    next_id = max(g.edges) + 1
    for lb in distinct:
        if len(lb) == 1:
            (e,) = lb
            new_edges[e] = gp.edges[e]
            if e in s:
                s_out.add(e)
            continue
        ends = boundary(gp, lb)
        assert len(ends) == 2, "a collapsed lobe has exactly two boundary vertices"
        x, y = sorted(ends)
        eid = next_id
        next_id += 1
        new_edges[eid] = (x, y)
        lobe_s = lb & s
        if not lobe_s:
            continue
        s_out.add(eid)
        (se,) = lobe_s
        if _connects(gp, lb - s, x, y):
            d_out.add(eid)
        if frozenset(gp.endpoints(se)) != frozenset((x, y)):
            c_out.add(eid)
    gt = MultiGraph({v for uv in new_edges.values() for v in uv}, new_edges)
    assert len(s_out) == 5
    assert len(set(gt.edges.values())) == gt.m and not any(
        u == v for u, v in gt.edges.values()
    ), "the collapsed graph must be simple"
    assert is_k_connected(gt, 3), "the collapsed graph must be 3-connected"
    eg = EnhancedGraph(gt, frozenset(c_out), frozenset(d_out))
    assert not _engine(gt, frozenset(s_out), eg.contract_protected, eg.delete_protected).splits
    return eg, frozenset(s_out)


def _connects(g: MultiGraph, edge_subset: frozenset[int], x: int, y: int) -> bool:
    """Is there an x-y path using only the given edges?"""
    if x == y:
        return True
    reach = {x}
    grow = True
    while grow:
        grow = False
        for e in edge_subset:
            u, v = g.endpoints(e)
            if u in reach and v not in reach:
                reach.add(v)
                grow = True
            elif v in reach and u not in reach:
                reach.add(u)
                grow = True
        if y in reach:
            return True
    return False


def association_roundtrip_ok(g: MultiGraph, config: Iterable[int]) -> bool:
    """to_enhanced . from_enhanced . to_enhanced is stable; used by tests."""
    eg, s_t = to_enhanced(g, config)
    expanded, s_p = from_enhanced(eg, s_t)
    eg2, s_t2 = to_enhanced(expanded, s_p)
    from .minors import canonical_enhanced_key

    return canonical_enhanced_key(eg, s_t) == canonical_enhanced_key(eg2, s_t2)


GADGETS = ("triangle", "double-low", "double-high")


def from_enhanced(
    eg: EnhancedGraph, config: Iterable[int], gadget: str = "triangle"
) -> tuple[MultiGraph, frozenset[int]]:
    """Expand protections into plain gadgets; inverse of to_enhanced on canonical forms.

    Per edge e = xy (x the lower endpoint): delete protection alone doubles the
    edge; contract protection alone subdivides it (the configuration moves to
    the half at x); both protections expand to the default triangle gadget
    x-z-y plus the chord xy, with the configuration on xz.  The alternative
    doubly protected gadgets subdivide and double one half instead.  The edge
    count of the result equals the weight of the input.
    """
    if gadget not in GADGETS:
        raise ValueError(f"unknown gadget {gadget!r}")
    g = eg.graph
    s = frozenset(config)
    if not s <= g.edge_ids():
        raise ValueError("configuration edges must belong to the graph")
    edges: dict[int, tuple[int, int]] = {}
    vertices = set(g.vertices)
    s_out: set[int] = set()
    next_v = max(g.vertices) + 1 if g.vertices else 0
    next_e = max(g.edges) + 1 if g.edges else 1
    for e in sorted(g.edges):
        x, y = g.edges[e]
        in_c = e in eg.contract_protected
        in_d = e in eg.delete_protected
        in_s = e in s
        if not in_c and not in_d:
            edges[e] = (x, y)
            if in_s:
                s_out.add(e)
        elif in_d and not in_c:
            edges[e] = (x, y)
            edges[next_e] = (x, y)
            next_e += 1
            if in_s:
                s_out.add(e)
        elif in_c and not in_d:
            z = next_v
            next_v += 1
            vertices.add(z)
            edges[e] = (x, z)
            edges[next_e] = (z, y)
            next_e += 1
            if in_s:
                s_out.add(e)
        else:
            z = next_v
            next_v += 1
            vertices.add(z)
            if gadget == "triangle":
                edges[e] = (x, z)
                edges[next_e] = (z, y)
                edges[next_e + 1] = (x, y)
                next_e += 2
                if in_s:
                    s_out.add(e)
            elif gadget == "double-low":
                edges[e] = (x, z)
                edges[next_e] = (x, z)
                edges[next_e + 1] = (z, y)
                next_e += 2
                if in_s:
                    s_out.add(e)
            else:
                edges[e] = (z, y)
                edges[next_e] = (z, y)
                edges[next_e + 1] = (x, z)
                next_e += 2
                if in_s:
                    s_out.add(e)
    out = MultiGraph(vertices, edges)
    assert out.m == eg.weight, "gadget expansion must preserve the weight"
    return out, frozenset(s_out)
