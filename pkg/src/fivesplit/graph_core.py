"""Multigraphs with stable edge identifiers, separations, and tree machinery.

Graphs here are finite multigraphs: loops and parallel edges are allowed, and
every edge carries an integer identifier that survives into subgraphs, so edge
subsets and configurations can be tracked across deletions and contractions.

A separation of a graph G is an unordered pair (A, B) of edge sets partitioning
E(G); its boundary is the set of vertices incident both to an edge of A and to
an edge of B, and its order is the size of the boundary.  Separations with an
empty side are exposed (they have order 0); callers filter as needed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Iterable, Iterator, Mapping

EdgeSubset = frozenset[int]


class MultiGraph:
    """Immutable-by-convention multigraph.

    vertices: frozenset of integer vertex labels.
    edges: dict edge_id -> (u, v) with u <= v; loops have u == v.
    """

    __slots__ = ("vertices", "edges", "_key")

    def __init__(self, vertices: Iterable[int], edges: Mapping[int, tuple[int, int]]):
        vs = frozenset(vertices)
        es: dict[int, tuple[int, int]] = {}
        for eid, (u, v) in dict(edges).items():
            if u not in vs or v not in vs:
                raise ValueError(f"edge {eid} has endpoint outside the vertex set")
            es[int(eid)] = (u, v) if u <= v else (v, u)
        self.vertices = vs
        self.edges = es
        self._key: tuple | None = None

    @property
    def n(self) -> int:
        return len(self.vertices)

    @property
    def m(self) -> int:
        return len(self.edges)

    def edge_ids(self) -> EdgeSubset:
        return frozenset(self.edges)

    def endpoints(self, e: int) -> tuple[int, int]:
        try:
            return self.edges[e]
        except KeyError:
            raise ValueError(f"unknown edge {e}") from None

    def is_loop(self, e: int) -> bool:
        u, v = self.endpoints(e)
        return u == v

    def incident_edges(self, v: int) -> list[int]:
        return sorted(e for e, (a, b) in self.edges.items() if v in (a, b))

    def degree(self, v: int) -> int:
        """Edge slots at v; a loop counts twice."""
        return sum((a == v) + (b == v) for a, b in self.edges.values())

    def key(self) -> tuple:
        """Identity key (labels included); suitable as a cache key."""
        if self._key is None:
            self._key = (
                tuple(sorted(self.vertices)),
                tuple(sorted((e, u, v) for e, (u, v) in self.edges.items())),
            )
        return self._key

    def __eq__(self, other: object) -> bool:
        return isinstance(other, MultiGraph) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __repr__(self) -> str:
        return f"MultiGraph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class GraphSeparation:
    side_a: EdgeSubset
    side_b: EdgeSubset
    boundary: frozenset[int]
    order: int


def edge_vertices(g: MultiGraph, subset: Iterable[int]) -> frozenset[int]:
    """Vertices incident to at least one edge of the subset."""
    out: set[int] = set()
    for e in subset:
        u, v = g.endpoints(e)
        out.add(u)
        out.add(v)
    return frozenset(out)


def boundary(g: MultiGraph, subset: Iterable[int]) -> frozenset[int]:
    a = frozenset(subset)
    return edge_vertices(g, a) & edge_vertices(g, g.edge_ids() - a)


def separation_order(g: MultiGraph, subset: Iterable[int]) -> int:
    return len(boundary(g, subset))


def is_proper(g: MultiGraph, subset: Iterable[int]) -> bool:
    """True when each side of the separation has a vertex the other side misses."""
    a = frozenset(subset)
    va = edge_vertices(g, a)
    vb = edge_vertices(g, g.edge_ids() - a)
    return bool(va - vb) and bool(vb - va)


def delete_edge(g: MultiGraph, e: int) -> MultiGraph:
    g.endpoints(e)
    return MultiGraph(g.vertices, {f: uv for f, uv in g.edges.items() if f != e})


def delete_edges(g: MultiGraph, es: Iterable[int]) -> MultiGraph:
    drop = set(es)
    for e in drop:
        g.endpoints(e)
    return MultiGraph(g.vertices, {f: uv for f, uv in g.edges.items() if f not in drop})


def delete_vertex(g: MultiGraph, v: int) -> MultiGraph:
    if v not in g.vertices:
        raise ValueError(f"unknown vertex {v}")
    return MultiGraph(
        g.vertices - {v},
        {e: (a, b) for e, (a, b) in g.edges.items() if v not in (a, b)},
    )


def contract_edge(g: MultiGraph, e: int) -> MultiGraph:
    """Contract a non-loop edge; the lower endpoint survives.

    Edges parallel to e would become loops and are deleted; loops elsewhere and
    pre-existing loops at the merged vertex are kept.
    """
    u, v = g.endpoints(e)
    if u == v:
        raise ValueError(f"cannot contract loop {e}")
    edges: dict[int, tuple[int, int]] = {}
    for f, (a, b) in g.edges.items():
        if f == e:
            continue
        if (a, b) == (u, v):
            continue
        na = u if a == v else a
        nb = u if b == v else b
        edges[f] = (na, nb)
    return MultiGraph(g.vertices - {v}, edges)


def connected_components(g: MultiGraph) -> list[frozenset[int]]:
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for a, b in g.edges.values():
        adj[a].add(b)
        adj[b].add(a)
    seen: set[int] = set()
    comps: list[frozenset[int]] = []
    for root in sorted(g.vertices):
        if root in seen:
            continue
        comp = {root}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in adj[x]:
                if y not in comp:
                    comp.add(y)
                    stack.append(y)
        seen |= comp
        comps.append(frozenset(comp))
    return comps


def is_connected(g: MultiGraph) -> bool:
    return len(connected_components(g)) <= 1


def induced_subgraph(g: MultiGraph, vertex_subset: Iterable[int]) -> MultiGraph:
    vs = frozenset(vertex_subset)
    return MultiGraph(
        vs, {e: (a, b) for e, (a, b) in g.edges.items() if a in vs and b in vs}
    )


def _simple_adjacency(g: MultiGraph) -> dict[int, set[int]]:
    adj: dict[int, set[int]] = {v: set() for v in g.vertices}
    for a, b in g.edges.values():
        if a != b:
            adj[a].add(b)
            adj[b].add(a)
    return adj


def _vertex_flow(adj: dict[int, set[int]], s: int, t: int, stop_at: int) -> int:
    """Number of internally vertex-disjoint s-t paths, capped at stop_at.

    Unit-capacity node splitting; augmenting paths by BFS.  Vertices of the
    residual network are ('in', v) / ('out', v), with s and t uncollapsed.
    """
    cap: dict[tuple, dict[tuple, int]] = {}

    def add(a: tuple, b: tuple, c: int) -> None:
        cap.setdefault(a, {})[b] = cap.setdefault(a, {}).get(b, 0) + c
        cap.setdefault(b, {}).setdefault(a, 0)

    for v in adj:
        if v not in (s, t):
            add(("in", v), ("out", v), 1)
    for a in adj:
        for b in adj[a]:
            pa = ("out", a) if a != s and a != t else ("v", a)
            pb = ("in", b) if b != s and b != t else ("v", b)
            add(pa, pb, 1)
    src, dst = ("v", s), ("v", t)
    flow = 0
    while flow < stop_at:
        prev: dict[tuple, tuple] = {src: src}
        queue = [src]
        while queue and dst not in prev:
            x = queue.pop(0)
            for y, c in cap.get(x, {}).items():
                if c > 0 and y not in prev:
                    prev[y] = x
                    queue.append(y)
        if dst not in prev:
            break
        y = dst
        while y != src:
            x = prev[y]
            cap[x][y] -= 1
            cap[y][x] += 1
            y = x
        flow += 1
    return flow


def is_k_connected(g: MultiGraph, k: int) -> bool:
    """Vertex connectivity of the underlying simple graph is at least k."""
    if k <= 0:
        return True
    if g.n == 0:
        return False
    if not is_connected(g):
        return False
    adj = _simple_adjacency(g)
    noncomplete = [
        (u, v)
        for u, v in itertools.combinations(sorted(g.vertices), 2)
        if v not in adj[u]
    ]
    if not noncomplete:
        return g.n - 1 >= k
    return all(_vertex_flow(adj, u, v, k) >= k for u, v in noncomplete)


def _int_det(mat: list[list[int]]) -> int:
    """Fraction-free Bareiss determinant of an integer matrix."""
    n = len(mat)
    if n == 0:
        return 1
    m = [row[:] for row in mat]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def spanning_tree_count(g: MultiGraph) -> int:
    """Number of spanning trees (matrix-tree); 0 exactly when G is disconnected."""
    if g.n <= 1:
        return 1
    if not is_connected(g):
        return 0
    verts = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    lap = [[0] * n for _ in range(n)]
    for a, b in g.edges.values():
        if a == b:
            continue
        ia, ib = idx[a], idx[b]
        lap[ia][ia] += 1
        lap[ib][ib] += 1
        lap[ia][ib] -= 1
        lap[ib][ia] -= 1
    reduced = [row[: n - 1] for row in lap[: n - 1]]
    return _int_det(reduced)


def spanning_trees(g: MultiGraph) -> Iterator[EdgeSubset]:
    """All spanning trees as edge-id sets, by deletion/contraction recursion."""
    if not is_connected(g):
        return

    def rec(h: MultiGraph) -> Iterator[frozenset[int]]:
        if h.n <= 1:
            yield frozenset()
            return
        e = min((f for f in h.edges if not h.is_loop(f)), default=None)
        if e is None:
            return
        for t in rec(contract_edge(h, e)):
            yield t | {e}
        rest = delete_edge(h, e)
        if is_connected(rest):
            yield from rec(rest)

    yield from rec(g)


def _spanning_forests(g: MultiGraph) -> Iterator[EdgeSubset]:
    """Bases of the graphic matroid: one spanning tree per component, unioned."""
    comps = connected_components(g)
    per_comp = [list(spanning_trees(induced_subgraph(g, c))) for c in comps]
    for choice in itertools.product(*per_comp):
        yield frozenset().union(*choice) if choice else frozenset()


def pieces(g: MultiGraph, cut: Iterable[int]) -> list[EdgeSubset]:
    """Pieces of G relative to a vertex cut X.

    One piece per component of G - X (its edges, including edges into X) plus
    one piece per edge with both endpoints inside X.  Every separation whose
    boundary lies inside X is a union of pieces versus the rest.
    """
    x = frozenset(cut)
    comp_of: dict[int, int] = {}
    adj: dict[int, list[int]] = {v: [] for v in g.vertices if v not in x}
    for a, b in g.edges.values():
        if a not in x and b not in x and a != b:
            adj[a].append(b)
            adj[b].append(a)
    cid = 0
    for root in sorted(adj):
        if root in comp_of:
            continue
        comp_of[root] = cid
        stack = [root]
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in comp_of:
                    comp_of[w] = cid
                    stack.append(w)
        cid += 1
    comp_edges: dict[int, set[int]] = {i: set() for i in range(cid)}
    out: list[EdgeSubset] = []
    for e, (a, b) in sorted(g.edges.items()):
        if a in x and b in x:
            out.append(frozenset([e]))
        else:
            anchor = a if a not in x else b
            comp_edges[comp_of[anchor]].add(e)
    out.extend(frozenset(es) for i, es in sorted(comp_edges.items()) if es)
    return out


def enumerate_low_order_separations(
    g: MultiGraph,
    max_order: int,
    require: Callable[[GraphSeparation], bool] | None = None,
) -> Iterator[GraphSeparation]:
    """All separations of order <= max_order, each unordered pair once.

    Candidate cuts are vertex subsets X with |X| <= max_order; sides are unions
    of pieces relative to X.  The reported order is recomputed from the actual
    boundary, which may be smaller than |X|.
    """
    all_edges = g.edge_ids()
    verts = sorted(g.vertices)
    seen: set[EdgeSubset] = set()
    for size in range(max_order + 1):
        for x in itertools.combinations(verts, size):
            ps = pieces(g, x)
            for bits in range(1 << len(ps)):
                a: frozenset[int] = frozenset()
                for i in range(len(ps)):
                    if bits >> i & 1:
                        a |= ps[i]
                b = all_edges - a
                canon = a if sorted(a) <= sorted(b) else b
                if canon in seen:
                    continue
                seen.add(canon)
                bnd = boundary(g, canon)
                if len(bnd) > max_order:
                    continue
                sep = GraphSeparation(canon, all_edges - canon, bnd, len(bnd))
                if require is None or require(sep):
                    yield sep


def blocks(g: MultiGraph) -> list[EdgeSubset]:
    """Biconnected components as edge sets; bridges and loops are singletons.

    Two non-loop edges share a block exactly when some cycle contains both;
    parallel edges form 2-cycles and so share a block.
    """
    out: list[EdgeSubset] = [
        frozenset([e]) for e in sorted(g.edges) if g.is_loop(e)
    ]
    adj: dict[int, list[tuple[int, int]]] = {v: [] for v in g.vertices}
    for e, (a, b) in sorted(g.edges.items()):
        if a != b:
            adj[a].append((e, b))
            adj[b].append((e, a))
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = itertools.count()
    stack: list[int] = []

    def dfs(u: int, parent_edge: int) -> None:
        disc[u] = low[u] = next(counter)
        for e, w in adj[u]:
            if e == parent_edge:
                continue
            if w not in disc:
                stack.append(e)
                dfs(w, e)
                low[u] = min(low[u], low[w])
                if low[w] >= disc[u]:
                    blk: set[int] = set()
                    while True:
                        f = stack.pop()
                        blk.add(f)
                        if f == e:
                            break
                    out.append(frozenset(blk))
            elif disc[w] < disc[u]:
                stack.append(e)
                low[u] = min(low[u], disc[w])

    for root in sorted(g.vertices):
        if root not in disc:
            dfs(root, -1)
    return out


def is_matroid_dual_pair(
    g: MultiGraph, h: MultiGraph, bijection: Mapping[int, int]
) -> bool:
    """True when the bijection maps complements of bases of M(G) onto bases of M(H).

    Brute force over spanning forests; intended for reference-sized graphs.
    """
    ge, he = g.edge_ids(), h.edge_ids()
    if set(bijection) != set(ge) or set(bijection.values()) != set(he):
        return False
    if len(ge) != len(he):
        return False
    g_bases = set(_spanning_forests(g))
    h_bases = set(_spanning_forests(h))
    mapped = {frozenset(bijection[e] for e in ge - t) for t in g_bases}
    return mapped == h_bases


def _adjacency_counts(g: MultiGraph) -> dict[int, dict[int, int]]:
    """adj[v][w] = number of v-w edges; loops counted once under adj[v][v]."""
    adj: dict[int, dict[int, int]] = {v: {} for v in g.vertices}
    for a, b in g.edges.values():
        adj[a][b] = adj[a].get(b, 0) + 1
        if a != b:
            adj[b][a] = adj[b].get(a, 0) + 1
    return adj


def find_isomorphism(g: MultiGraph, h: MultiGraph) -> dict[int, int] | None:
    """A vertex bijection preserving edge multiplicities, or None.

    Backtracking over degree-invariant classes; intended for the small
    reference graphs (brute force beyond ~10 vertices gets slow).
    """
    if g.n != h.n or g.m != h.m:
        return None
    ga, ha = _adjacency_counts(g), _adjacency_counts(h)

    def invariants(adj: dict[int, dict[int, int]]) -> dict[int, tuple]:
        inv = {v: (sum(adj[v].values()) + adj[v].get(v, 0),) for v in adj}
        for _ in range(2):
            inv = {
                v: (inv[v], tuple(sorted((c, inv[w]) for w, c in adj[v].items())))
                for v in adj
            }
        return inv

    gi, hi = invariants(ga), invariants(ha)
    if sorted(gi.values()) != sorted(hi.values()):
        return None
    gv = sorted(g.vertices, key=lambda v: (gi[v], v))
    mapping: dict[int, int] = {}
    used: set[int] = set()

    def extend(i: int) -> bool:
        if i == len(gv):
            return True
        v = gv[i]
        for w in sorted(h.vertices):
            if w in used or hi[w] != gi[v]:
                continue
            ok = ga[v].get(v, 0) == ha[w].get(w, 0)
            for vm, wm in mapping.items():
                if ga[v].get(vm, 0) != ha[w].get(wm, 0):
                    ok = False
                    break
            if not ok:
                continue
            mapping[v] = w
            used.add(w)
            if extend(i + 1):
                return True
            del mapping[v]
            used.discard(w)
        return False

    return dict(mapping) if extend(0) else None


# -- text and graph6 input/output -------------------------------------------


def parse_graph_text(text: str) -> tuple[MultiGraph, dict[str, EdgeSubset]]:
    """Parse the plain text format.

    First data line: ``n m``; then m lines ``edge_id u v`` with 0-based
    vertices; optional trailing ``c: ...`` / ``d: ...`` protection lines.
    Blank lines and ``#`` comments are ignored.
    """
    lines = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if line:
            lines.append(line)
    if not lines:
        raise ValueError("empty graph text")
    head = lines[0].split()
    if len(head) != 2:
        raise ValueError(f"expected 'n m' header, got {lines[0]!r}")
    n, m = int(head[0]), int(head[1])
    if n < 0 or m < 0:
        raise ValueError("negative sizes in header")
    edges: dict[int, tuple[int, int]] = {}
    prot: dict[str, set[int]] = {"c": set(), "d": set()}
    body = lines[1:]
    if len(body) < m:
        raise ValueError(f"expected {m} edge lines, found {len(body)}")
    for line in body[:m]:
        parts = line.split()
        if len(parts) != 3:
            raise ValueError(f"expected 'edge_id u v', got {line!r}")
        eid, u, v = (int(p) for p in parts)
        if eid in edges:
            raise ValueError(f"duplicate edge id {eid}")
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge {eid} endpoint out of range")
        edges[eid] = (u, v)
    for line in body[m:]:
        tag, _, rest = line.partition(":")
        tag = tag.strip().lower()
        if tag not in prot or not _:
            raise ValueError(f"unexpected line {line!r}")
        ids = {int(t) for t in rest.replace(",", " ").split()}
        unknown = ids - set(edges)
        if unknown:
            raise ValueError(f"{tag}: line names unknown edges {sorted(unknown)}")
        prot[tag] |= ids
    g = MultiGraph(range(n), edges)
    return g, {k: frozenset(v) for k, v in prot.items()}


def render_graph_text(
    g: MultiGraph,
    contract_protected: Iterable[int] = (),
    delete_protected: Iterable[int] = (),
) -> str:
    verts = sorted(g.vertices)
    idx = {v: i for i, v in enumerate(verts)}
    out = [f"{g.n} {g.m}"]
    for e in sorted(g.edges):
        u, v = g.edges[e]
        out.append(f"{e} {idx[u]} {idx[v]}")
    c = sorted(set(contract_protected))
    d = sorted(set(delete_protected))
    if c:
        out.append("c: " + " ".join(map(str, c)))
    if d:
        out.append("d: " + " ".join(map(str, d)))
    return "\n".join(out) + "\n"


def from_graph6(line: str) -> MultiGraph:
    """Decode one graph6 line (n <= 62); edge ids follow graph6 bit order, from 1."""
    s = line.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<") :]
    if not s:
        raise ValueError("empty graph6 line")
    data = [ord(ch) - 63 for ch in s]
    if any(b < 0 or b > 63 for b in data):
        raise ValueError("invalid graph6 character")
    if data[0] == 63:
        raise ValueError("graph6 graphs with n > 62 are not supported")
    n = data[0]
    bits = []
    for b in data[1:]:
        bits.extend((b >> k) & 1 for k in range(5, -1, -1))
    need = n * (n - 1) // 2
    if len(bits) < need:
        raise ValueError("graph6 line too short")
    edges: dict[int, tuple[int, int]] = {}
    eid = 1
    pos = 0
    for j in range(1, n):
        for i in range(j):
            if bits[pos]:
                edges[eid] = (i, j)
                eid += 1
            pos += 1
    return MultiGraph(range(n), edges)


def load_graph(text: str) -> tuple[MultiGraph, dict[str, EdgeSubset]]:
    """Accept either the text format or a single graph6 line."""
    stripped = [
        ln.split("#", 1)[0].strip() for ln in text.splitlines() if ln.split("#", 1)[0].strip()
    ]
    if stripped:
        head = stripped[0].split()
        if len(head) == 2 and all(t.lstrip("-").isdigit() for t in head):
            return parse_graph_text(text)
    if len(stripped) == 1:
        g = from_graph6(stripped[0])
        return g, {"c": frozenset(), "d": frozenset()}
    raise ValueError("unrecognised graph input")
