"""Minor containment, canonical forms, enhanced minor order, and the catalog.

Plain minors use the branch-set model: H is a minor of G when G carries
pairwise disjoint connected vertex sets, one per vertex of H, with at least as
many edges between two sets as H has between the corresponding vertices.

Enhanced graphs are ordered by six reduction operations: vertex deletion,
deletion of a non-delete-protected edge, contraction of a non-contract-
protected non-loop edge, removal of a protection mark, collapsing a parallel
pair onto a delete-protected survivor, and collapsing a degree-2 vertex onto a
contract-protected survivor.  All of them are weight non-increasing, where the
weight is the edge count plus the protection count.

Canonical forms label vertices by refined invariant cells and take the
lexicographically least edge encoding over the per-cell permutations; the
encoding colours each edge by its protection state (and optionally by
configuration membership), so isomorphism of enhanced graphs is exactly
equality of canonical forms.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, replace
from typing import Iterable, Mapping

from .graph_core import (
    MultiGraph,
    contract_edge,
    delete_edge,
    delete_vertex,
    find_isomorphism,
    spanning_trees,
)
from .splitting import EnhancedGraph

_MAX_CANON_VERTICES = 12
_MAX_CANON_ORDERINGS = 2_000_000


@dataclass(frozen=True)
class MinorPattern:
    name: str
    graph: MultiGraph

    def __post_init__(self) -> None:
        if any(u == v for u, v in self.graph.edges.values()):
            raise ValueError("minor patterns must be loopless")


def _connected_vertex_masks(g: MultiGraph) -> list[int]:
    verts = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for u, v in g.edges.values():
        if u != v:
            adj[idx[u]] |= 1 << idx[v]
            adj[idx[v]] |= 1 << idx[u]
    out = []
    for mask in range(1, 1 << len(verts)):
        low = mask & -mask
        seen = low
        frontier = low
        while frontier:
            nxt = 0
            i = 0
            f = frontier
            while f:
                if f & 1:
                    nxt |= adj[i] & mask & ~seen
                f >>= 1
                i += 1
            seen |= nxt
            frontier = nxt
        if seen == mask:
            out.append(mask)
    out.sort(key=lambda m: (bin(m).count("1"), m))
    return out


def _minor_search(
    host: MultiGraph, pattern: MultiGraph, roots: Mapping[int, int] | None
) -> bool:
    if pattern.n == 0:
        return True
    if host.n > 16:
        raise ValueError("minor search supports hosts with at most 16 vertices")
    if pattern.m > host.m or pattern.n > host.n:
        return False
    hverts = sorted(host.vertices)
    hidx = {v: i for i, v in enumerate(hverts)}
    host_pairs: list[tuple[int, int, int]] = []
    pair_mult: dict[tuple[int, int], int] = {}
    for u, v in host.edges.values():
        if u != v:
            key = (hidx[u], hidx[v])
            pair_mult[key] = pair_mult.get(key, 0) + 1
    for (iu, iv), c in pair_mult.items():
        host_pairs.append((1 << iu, 1 << iv, c))

    pmult: dict[tuple[int, int], int] = {}
    for u, v in pattern.edges.values():
        key = (u, v) if u <= v else (v, u)
        pmult[key] = pmult.get(key, 0) + 1
    pdeg: dict[int, int] = {v: 0 for v in pattern.vertices}
    for (u, v), c in pmult.items():
        pdeg[u] += c
        pdeg[v] += c
    order: list[int] = []
    remaining = set(pattern.vertices)
    while remaining:
        attached = [
            v for v in remaining if any((min(v, w), max(v, w)) in pmult for w in order)
        ]
        pool = attached or list(remaining)
        v = max(pool, key=lambda x: (pdeg[x], -x))
        order.append(v)
        remaining.discard(v)

    conn = _connected_vertex_masks(host)
    need = {
        (i, j): pmult.get((min(order[i], order[j]), max(order[i], order[j])), 0)
        for i in range(len(order))
        for j in range(i)
    }
    root_bits = {}
    if roots is not None:
        for pv, hv in roots.items():
            if pv not in pattern.vertices or hv not in host.vertices:
                raise ValueError("root map names unknown vertices")
            root_bits[pv] = 1 << hidx[hv]
        if len(set(roots.values())) != len(roots):
            raise ValueError("root map must be injective")

    total = len(order)

    def edges_between(a: int, b: int) -> int:
        return sum(
            c
            for bu, bv, c in host_pairs
            if (bu & a and bv & b) or (bu & b and bv & a)
        )

    def place(i: int, used: int, chosen: list[int]) -> bool:
        if i == total:
            return True
        pv = order[i]
        must = root_bits.get(pv, 0)
        free = len(hverts) - bin(used).count("1")
        if free < total - i:
            return False
        for mask in conn:
            if mask & used:
                continue
            if must and not mask & must:
                continue
            ok = True
            for j in range(i):
                k = need[(i, j)]
                if k and edges_between(mask, chosen[j]) < k:
                    ok = False
                    break
            if ok:
                chosen.append(mask)
                if place(i + 1, used | mask, chosen):
                    return True
                chosen.pop()
        return False

    return place(0, 0, [])


def has_minor(host: MultiGraph, pattern: MultiGraph | MinorPattern) -> bool:
    """Branch-set minor containment; reflexive on isomorphic graphs."""
    pg = pattern.graph if isinstance(pattern, MinorPattern) else pattern
    if any(u == v for u, v in pg.edges.values()):
        raise ValueError("patterns must be loopless")
    return _minor_search(host, pg, None)


def has_rooted_minor(
    host: MultiGraph, pattern: MultiGraph | MinorPattern, root_map: Mapping[int, int]
) -> bool:
    """Minor containment with prescribed host vertices inside given branch sets."""
    pg = pattern.graph if isinstance(pattern, MinorPattern) else pattern
    if any(u == v for u, v in pg.edges.values()):
        raise ValueError("patterns must be loopless")
    return _minor_search(host, pg, dict(root_map))


def _simplified(g: MultiGraph) -> MultiGraph:
    """Drop loops, parallels, and isolated vertices."""
    seen: set[tuple[int, int]] = set()
    edges: dict[int, tuple[int, int]] = {}
    for e in sorted(g.edges):
        u, v = g.edges[e]
        if u == v or (u, v) in seen:
            continue
        seen.add((u, v))
        edges[e] = (u, v)
    verts = {v for uv in edges.values() for v in uv}
    return MultiGraph(verts, edges)


def _has_minor_recursive(host: MultiGraph, pattern: MultiGraph, _seen=None) -> bool:
    """Independent route by deletion/contraction recursion (simple patterns only)."""
    if _seen is None:
        _seen = set()
    h = _simplified(host)
    if h.m < pattern.m or h.n < pattern.n:
        return False
    if h.m == pattern.m:
        return h.n == pattern.n and find_isomorphism(h, pattern) is not None
    key = canonical_form(EnhancedGraph(h))
    if key in _seen:
        return False
    for e in sorted(h.edges):
        if _has_minor_recursive(delete_edge(h, e), pattern, _seen):
            return True
        if _has_minor_recursive(contract_edge(h, e), pattern, _seen):
            return True
    _seen.add(key)
    return False


def f0() -> list[MinorPattern]:
    """The forbidden five: minor-minimal graphs on which some configuration is stuck."""
    from . import named_graphs as ng

    return [
        MinorPattern("K3,3", ng.complete_bipartite(3, 3)),
        MinorPattern("K5", ng.complete_graph(5)),
        MinorPattern("C", ng.cube()),
        MinorPattern("H", ng.h_graph()),
        MinorPattern("O", ng.octahedron()),
    ]


def f0_free(g: MultiGraph) -> bool:
    return not any(has_minor(g, p) for p in f0())


# -- canonical forms ----------------------------------------------------------


def _edge_colors(eg: EnhancedGraph, config: frozenset[int] | None) -> dict[int, int]:
    colors = {}
    for e in eg.graph.edges:
        c = 0
        if e in eg.contract_protected:
            c |= 1
        if e in eg.delete_protected:
            c |= 2
        if config is not None and e in config:
            c |= 4
        colors[e] = c
    return colors


def _refined_cells(g: MultiGraph, colors: dict[int, int]) -> list[list[int]]:
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for e, (a, b) in g.edges.items():
        adj[a].append((colors[e], b))
        adj[b].append((colors[e], a))
    inv: dict[int, object] = {
        v: tuple(sorted(c for c, _ in adj[v])) for v in g.vertices
    }
    for _ in range(3):
        nxt = {
            v: (inv[v], tuple(sorted((c, repr(inv[w])) for c, w in adj[v])))
            for v in g.vertices
        }
        names = {val: i for i, val in enumerate(sorted({repr(x) for x in nxt.values()}))}
        inv = {v: names[repr(nxt[v])] for v in g.vertices}
    cells: dict[object, list[int]] = {}
    for v in sorted(g.vertices):
        cells.setdefault(inv[v], []).append(v)
    return [cells[k] for k in sorted(cells)]


def canonical_labeling(
    eg: EnhancedGraph, config: frozenset[int] | None = None
) -> tuple[EnhancedGraph, frozenset[int] | None, dict[int, int]]:
    """Canonically relabelled copy plus the old-edge -> new-edge map.

    Vertices become 0..n-1 and edges 1..m; among all vertex orderings
    compatible with the refined invariant cells the one minimising the edge
    encoding (sorted (u, v, colour) triples) is chosen.
    """
    g = eg.graph
    if g.n > _MAX_CANON_VERTICES:
        raise ValueError(f"canonical forms support at most {_MAX_CANON_VERTICES} vertices")
    colors = _edge_colors(eg, config)
    cells = _refined_cells(g, colors)
    count = 1
    for cell in cells:
        for i in range(2, len(cell) + 1):
            count *= i
        if count > _MAX_CANON_ORDERINGS:
            raise ValueError("graph is too symmetric for the canonical search")
    best_enc: tuple | None = None
    best_pos: dict[int, int] | None = None
    for perm_parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        pos: dict[int, int] = {}
        i = 0
        for part in perm_parts:
            for v in part:
                pos[v] = i
                i += 1
        enc = tuple(
            sorted(
                (min(pos[u], pos[v]), max(pos[u], pos[v]), colors[e])
                for e, (u, v) in g.edges.items()
            )
        )
        if best_enc is None or enc < best_enc:
            best_enc = enc
            best_pos = pos
    assert best_enc is not None and best_pos is not None
    ordered = sorted(
        g.edges,
        key=lambda e: (
            min(best_pos[g.edges[e][0]], best_pos[g.edges[e][1]]),
            max(best_pos[g.edges[e][0]], best_pos[g.edges[e][1]]),
            colors[e],
            e,
        ),
    )
    edge_map = {e: i + 1 for i, e in enumerate(ordered)}
    new_edges = {
        edge_map[e]: (
            min(best_pos[g.edges[e][0]], best_pos[g.edges[e][1]]),
            max(best_pos[g.edges[e][0]], best_pos[g.edges[e][1]]),
        )
        for e in g.edges
    }
    out = EnhancedGraph(
        MultiGraph(range(g.n), new_edges),
        frozenset(edge_map[e] for e in eg.contract_protected),
        frozenset(edge_map[e] for e in eg.delete_protected),
    )
    new_config = (
        frozenset(edge_map[e] for e in config) if config is not None else None
    )
    return out, new_config, edge_map


def canonical_form(
    eg: EnhancedGraph, config: frozenset[int] | None = None
) -> tuple:
    """Isomorphism-invariant key: (n, sorted (u, v, colour) edge triples)."""
    g = eg.graph
    if g.n > _MAX_CANON_VERTICES:
        raise ValueError(f"canonical forms support at most {_MAX_CANON_VERTICES} vertices")
    colors = _edge_colors(eg, config)
    cells = _refined_cells(g, colors)
    count = 1
    for cell in cells:
        for i in range(2, len(cell) + 1):
            count *= i
        if count > _MAX_CANON_ORDERINGS:
            raise ValueError("graph is too symmetric for the canonical search")
    best: tuple | None = None
    for perm_parts in itertools.product(*(itertools.permutations(c) for c in cells)):
        pos: dict[int, int] = {}
        i = 0
        for part in perm_parts:
            for v in part:
                pos[v] = i
                i += 1
        enc = tuple(
            sorted(
                (min(pos[u], pos[v]), max(pos[u], pos[v]), colors[e])
                for e, (u, v) in g.edges.items()
            )
        )
        if best is None or enc < best:
            best = enc
    return (g.n, best)


def canonical_enhanced_key(eg: EnhancedGraph, config: frozenset[int] | None = None) -> tuple:
    return canonical_form(eg, config)


def canonical_graph_key(g: MultiGraph) -> tuple:
    return canonical_form(EnhancedGraph(g))


# -- the enhanced minor order -------------------------------------------------


def enhanced_children(eg: EnhancedGraph) -> list[tuple[str, EnhancedGraph]]:
    """All one-step reductions, in a fixed deterministic order."""
    g = eg.graph
    c_set = eg.contract_protected
    d_set = eg.delete_protected
    out: list[tuple[str, EnhancedGraph]] = []
    for v in sorted(g.vertices):
        h = delete_vertex(g, v)
        ids = h.edge_ids()
        out.append((f"delete vertex {v}", EnhancedGraph(h, c_set & ids, d_set & ids)))
    for e in sorted(g.edges):
        if e not in d_set:
            h = delete_edge(g, e)
            out.append((f"delete edge {e}", EnhancedGraph(h, c_set - {e}, d_set)))
    for e in sorted(g.edges):
        if e not in c_set and not g.is_loop(e):
            h = contract_edge(g, e)
            ids = h.edge_ids()
            out.append((f"contract edge {e}", EnhancedGraph(h, c_set & ids, d_set & ids)))
    for e in sorted(c_set):
        out.append((f"unprotect contract {e}", EnhancedGraph(g, c_set - {e}, d_set)))
    for e in sorted(d_set):
        out.append((f"unprotect delete {e}", EnhancedGraph(g, c_set, d_set - {e})))
    by_pair: dict[tuple[int, int], list[int]] = {}
    for e, (u, v) in g.edges.items():
        if u != v:
            by_pair.setdefault((u, v), []).append(e)
    for pair in sorted(by_pair):
        es = sorted(by_pair[pair])
        if len(es) < 2:
            continue
        for keep, drop in itertools.permutations(es, 2):
            if drop in d_set:
                continue
            h = delete_edge(g, drop)
            out.append(
                (
                    f"merge parallel {drop} into {keep}",
                    EnhancedGraph(h, c_set - {drop}, (d_set - {drop}) | {keep}),
                )
            )
    for w in sorted(g.vertices):
        inc = g.incident_edges(w)
        if len(inc) != 2 or g.degree(w) != 2:
            continue
        e1, e2 = inc
        if g.edges[e1] == g.edges[e2]:
            continue
        for keep, con in ((e1, e2), (e2, e1)):
            if con in c_set:
                continue
            h = contract_edge(g, con)
            ids = h.edge_ids()
            if keep not in ids:
                continue
            out.append(
                (
                    f"smooth degree-2 vertex {w} contracting {con}",
                    EnhancedGraph(h, (c_set & ids) | {keep}, d_set & ids),
                )
            )
    return out


def enhanced_has_minor(eg: EnhancedGraph, target: EnhancedGraph) -> bool:
    """Is target reachable from eg by reduction steps (including zero steps)?"""
    t_key = canonical_form(target)
    t_m, t_n, t_w = target.graph.m, target.graph.n, target.weight
    seen: set[tuple] = set()
    stack = [eg]
    while stack:
        cur = stack.pop()
        if cur.graph.m < t_m or cur.graph.n < t_n or cur.weight < t_w:
            continue
        key = canonical_form(cur)
        if key in seen:
            continue
        seen.add(key)
        if key == t_key:
            return True
        for _, child in enhanced_children(cur):
            stack.append(child)
    return False


# -- catalog entries and their file format ------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    enhanced: EnhancedGraph
    witness: frozenset[int]
    family: str
    weight: int
    dual_partner: int | None

    def with_partner(self, partner: int | None) -> "CatalogEntry":
        return replace(self, dual_partner=partner)


_FLAG_TO_TEXT = {0: "-", 1: "c", 2: "d", 3: "cd"}
_TEXT_TO_FLAG = {v: k for k, v in _FLAG_TO_TEXT.items()}


def render_catalog(entries: list[CatalogEntry]) -> str:
    lines = ["# minor-minimal non-split catalog", "# schema 1"]
    for ent in entries:
        g = ent.enhanced.graph
        parts = []
        for e in sorted(g.edges):
            u, v = g.edges[e]
            flag = (e in ent.enhanced.contract_protected) | (
                (e in ent.enhanced.delete_protected) << 1
            )
            parts.append(f"{u}-{v}:{_FLAG_TO_TEXT[flag]}")
        witness = ",".join(str(e) for e in sorted(ent.witness))
        dual = "-" if ent.dual_partner is None else str(ent.dual_partner)
        lines.append(
            f"{g.n}|{','.join(parts)}|{witness}|{ent.family}|{ent.weight}|{dual}"
        )
    return "\n".join(lines) + "\n"


def parse_catalog(text: str) -> list[CatalogEntry]:
    out: list[CatalogEntry] = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split("|")
        if len(fields) != 6:
            raise ValueError(f"malformed catalog line: {line!r}")
        n = int(fields[0])
        edges: dict[int, tuple[int, int]] = {}
        c_set: set[int] = set()
        d_set: set[int] = set()
        for i, part in enumerate(fields[1].split(",")):
            uv, _, flag = part.partition(":")
            u, _, v = uv.partition("-")
            eid = i + 1
            edges[eid] = (int(u), int(v))
            f = _TEXT_TO_FLAG[flag]
            if f & 1:
                c_set.add(eid)
            if f & 2:
                d_set.add(eid)
        eg = EnhancedGraph(MultiGraph(range(n), edges), frozenset(c_set), frozenset(d_set))
        witness = frozenset(int(t) for t in fields[2].split(",") if t)
        dual = None if fields[5] == "-" else int(fields[5])
        out.append(CatalogEntry(eg, witness, fields[3], int(fields[4]), dual))
    return out


def family_label(g: MultiGraph) -> str:
    """Name of the underlying-graph family, by canonical-form lookup."""
    from . import named_graphs as ng

    refs = {
        "K4": ng.complete_graph(4),
        "W4": ng.wheel(4),
        "W5": ng.wheel(5),
        "K5-": ng.k5_minus(),
        "P": ng.prism(),
        "P+": ng.prism_plus(),
        "D": ng.double_fan(),
        "D*": ng.double_fan_dual(),
        "K3,3": ng.complete_bipartite(3, 3),
        "K5": ng.complete_graph(5),
        "C": ng.cube(),
        "H": ng.h_graph(),
        "O": ng.octahedron(),
    }
    key = canonical_graph_key(g)
    for name, ref in refs.items():
        if canonical_graph_key(ref) == key:
            return name
    return "?"


# -- matroid-dual bijections between labelled graphs --------------------------


def find_dual_bijection(
    g: MultiGraph,
    h: MultiGraph,
    tags_g: Mapping[int, object] | None = None,
    tags_h: Mapping[int, object] | None = None,
) -> dict[int, int] | None:
    """Edge bijection mapping tree complements of g onto trees of h, or None.

    Optional tags must correspond under the bijection (callers encode the
    protection swap there).  Candidates are pruned by tree-count invariants:
    an edge in a(e) trees of g must map to an edge in N - a(e) trees of h, and
    pair counts transform as q(f, f') = N - b(f) - b(f') + both(f, f').
    """
    trees_g = list(spanning_trees(g))
    trees_h = set(spanning_trees(h))
    n_trees = len(trees_g)
    if n_trees == 0 or len(trees_h) != n_trees or g.m != h.m:
        return None
    ge, he = sorted(g.edges), sorted(h.edges)

    def per_edge(trees: Iterable[frozenset[int]], edges: list[int]) -> dict[int, int]:
        cnt = {e: 0 for e in edges}
        for t in trees:
            for e in t:
                cnt[e] += 1
        return cnt

    a = per_edge(trees_g, ge)
    b = per_edge(trees_h, he)
    pg = {(e, f): 0 for e in ge for f in ge}
    for t in trees_g:
        ts = sorted(t)
        for e in ts:
            for f in ts:
                pg[(e, f)] += 1
    ph = {(e, f): 0 for e in he for f in he}
    for t in trees_h:
        ts = sorted(t)
        for e in ts:
            for f in ts:
                ph[(e, f)] += 1
    qh = {
        (e, f): n_trees - b[e] - b[f] + ph[(e, f)]
        for e in he
        for f in he
        if e != f
    }
    for e in he:
        qh[(e, e)] = n_trees - b[e]
    key_g: dict[int, object] = {
        e: (a[e], None if tags_g is None else tags_g.get(e)) for e in ge
    }
    key_h: dict[int, object] = {
        f: (n_trees - b[f], None if tags_h is None else tags_h.get(f)) for f in he
    }
    for _ in range(2):
        nxt_g = {
            e: (key_g[e], tuple(sorted((repr(key_g[f]), pg[(e, f)]) for f in ge if f != e)))
            for e in ge
        }
        nxt_h = {
            f: (key_h[f], tuple(sorted((repr(key_h[f2]), qh[(f, f2)]) for f2 in he if f2 != f)))
            for f in he
        }
        names = {
            val: i
            for i, val in enumerate(
                sorted({repr(x) for x in nxt_g.values()} | {repr(x) for x in nxt_h.values()})
            )
        }
        key_g = {e: names[repr(nxt_g[e])] for e in ge}
        key_h = {f: names[repr(nxt_h[f])] for f in he}
    if sorted(key_g.values()) != sorted(key_h.values()):
        return None
    class_size = {k: sum(1 for e in ge if key_g[e] == k) for k in set(key_g.values())}
    order = sorted(ge, key=lambda e: (class_size[key_g[e]], e))
    assigned: dict[int, int] = {}
    used: set[int] = set()

    def full_check() -> bool:
        all_g = g.edge_ids()
        for t in trees_g:
            image = frozenset(assigned[e] for e in all_g - t)
            if image not in trees_h:
                return False
        return True

    def extend(i: int) -> bool:
        if i == len(order):
            return full_check()
        e = order[i]
        for f in he:
            if f in used or key_h[f] != key_g[e]:
                continue
            if any(qh[(f, assigned[e2])] != pg[(e, e2)] for e2 in assigned):
                continue
            assigned[e] = f
            used.add(f)
            if extend(i + 1):
                return True
            del assigned[e]
            used.discard(f)
        return False

    return dict(assigned) if extend(0) else None


def assign_dual_partners(entries: list[CatalogEntry]) -> list[CatalogEntry]:
    """Fill dual_partner indices: C and D swap under the matroid-dual bijection."""
    partner: list[int | None] = [None] * len(entries)
    for i, ei in enumerate(entries):
        if partner[i] is not None:
            continue
        tags_i = {
            e: (e in ei.enhanced.contract_protected, e in ei.enhanced.delete_protected)
            for e in ei.enhanced.graph.edges
        }
        for j in range(i, len(entries)):
            if partner[j] is not None and j != i:
                continue
            ej = entries[j]
            if ej.enhanced.graph.m != ei.enhanced.graph.m or ej.weight != ei.weight:
                continue
            tags_j = {
                f: (f in ej.enhanced.delete_protected, f in ej.enhanced.contract_protected)
                for f in ej.enhanced.graph.edges
            }
            if find_dual_bijection(ei.enhanced.graph, ej.enhanced.graph, tags_i, tags_j):
                partner[i] = j
                partner[j] = i
                break
    return [entries[i].with_partner(partner[i]) for i in range(len(entries))]
