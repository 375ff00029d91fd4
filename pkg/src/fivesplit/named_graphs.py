"""Reference graphs, planar duals from face structures, and stored dual pairs.

All constructions use vertices 0..n-1 and edge ids 1..m assigned in
lexicographic endpoint order (extra edges appended), so tests and the catalog
can refer to them stably.  Planar duals are built from explicit face lists
(each face a set of edge ids); the face structures are validated locally
(every edge on exactly two faces, Euler count) and globally by the brute-force
matroid duality check in the test suite.
"""

from __future__ import annotations

import itertools

from .graph_core import MultiGraph, find_isomorphism


def _from_pairs(n: int, pairs: list[tuple[int, int]]) -> MultiGraph:
    return MultiGraph(range(n), {i + 1: uv for i, uv in enumerate(pairs)})


def path_graph(k: int) -> MultiGraph:
    """Path with k edges on vertices 0..k."""
    return _from_pairs(k + 1, [(i, i + 1) for i in range(k)])


def cycle_graph(n: int) -> MultiGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return _from_pairs(n, [(i, (i + 1) % n) for i in range(n)])


def complete_graph(n: int) -> MultiGraph:
    return _from_pairs(n, list(itertools.combinations(range(n), 2)))


def complete_bipartite(a: int, b: int) -> MultiGraph:
    return _from_pairs(a + b, [(i, a + j) for i in range(a) for j in range(b)])


def triangle() -> MultiGraph:
    return complete_graph(3)


def wheel(k: int) -> MultiGraph:
    """Wheel with k rim vertices 0..k-1 and hub k; rim edges 1..k, spokes k+1..2k."""
    if k < 3:
        raise ValueError("wheel needs at least 3 rim vertices")
    pairs = [(i, (i + 1) % k) for i in range(k)] + [(i, k) for i in range(k)]
    return _from_pairs(k + 1, pairs)


def wheel_rim_edges(k: int) -> frozenset[int]:
    return frozenset(range(1, k + 1))


def wheel_spoke_edges(k: int) -> frozenset[int]:
    return frozenset(range(k + 1, 2 * k + 1))


def k5_minus() -> MultiGraph:
    """K5 with the edge {3,4} removed; a maximal planar triangular bipyramid."""
    pairs = [p for p in itertools.combinations(range(5), 2) if p != (3, 4)]
    return _from_pairs(5, pairs)


def prism() -> MultiGraph:
    """Two triangles 012 and 345 joined by the matching 03, 14, 25."""
    pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 4), (2, 5), (3, 4), (3, 5), (4, 5)]
    return _from_pairs(6, pairs)


def prism_plus() -> MultiGraph:
    """The prism with the extra chord {0,4} (edge id 10)."""
    g = prism()
    edges = dict(g.edges)
    edges[10] = (0, 4)
    return MultiGraph(g.vertices, edges)


def cube() -> MultiGraph:
    """3-cube on vertices 0..7 read as bit strings."""
    pairs = [
        (u, v)
        for u, v in itertools.combinations(range(8), 2)
        if bin(u ^ v).count("1") == 1
    ]
    return _from_pairs(8, pairs)


def octahedron() -> MultiGraph:
    """K_{2,2,2}: all pairs except {0,1}, {2,3}, {4,5}."""
    skip = {(0, 1), (2, 3), (4, 5)}
    pairs = [p for p in itertools.combinations(range(6), 2) if p not in skip]
    return _from_pairs(6, pairs)


def h_graph() -> MultiGraph:
    """The cube with one vertex replaced by a triangle on its neighbours."""
    g = cube()
    edges = {e: uv for e, uv in g.edges.items() if 0 not in uv}
    nxt = max(g.edges) + 1
    for u, v in [(1, 2), (1, 4), (2, 4)]:
        edges[nxt] = (u, v)
        nxt += 1
    return MultiGraph(g.vertices - {0}, edges)


def h_graph_from_octahedron() -> MultiGraph:
    """Octahedron with the face {0,2,4} replaced by a new degree-3 vertex."""
    g = octahedron()
    drop = {(0, 2), (0, 4), (2, 4)}
    edges = {e: uv for e, uv in g.edges.items() if uv not in drop}
    nxt = max(g.edges) + 1
    for u in (0, 2, 4):
        edges[nxt] = (u, 6)
        nxt += 1
    return MultiGraph(g.vertices | {6}, edges)


def double_fan() -> MultiGraph:
    """Path 0-1-2-3 plus two nonadjacent vertices 4, 5 joined to every path vertex."""
    pairs = [(0, 1), (1, 2), (2, 3)] + [(i, a) for a in (4, 5) for i in range(4)]
    pairs = sorted(pairs)
    return _from_pairs(6, pairs)


def subdivided_claw() -> MultiGraph:
    """K_{1,3} with every edge subdivided once; six bridges."""
    pairs = [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]
    return _from_pairs(7, pairs)


# -- planar duals ------------------------------------------------------------


def dual_from_faces(g: MultiGraph, faces: list[frozenset[int]]) -> MultiGraph:
    """Planar dual from a face structure; edge ids carry over unchanged.

    Faces are edge-id sets; every edge must lie on exactly two faces and the
    face count must satisfy Euler's relation for a connected plane graph.
    """
    if len(faces) != 2 - g.n + g.m:
        raise ValueError("face count violates Euler's relation")
    where: dict[int, list[int]] = {e: [] for e in g.edges}
    for i, face in enumerate(faces):
        for e in face:
            where[e].append(i)
    for e, fs in where.items():
        if len(fs) != 2:
            raise ValueError(f"edge {e} lies on {len(fs)} faces, expected 2")
    return MultiGraph(range(len(faces)), {e: (fs[0], fs[1]) for e, fs in where.items()})


def _edge_id_of(g: MultiGraph, u: int, v: int) -> int:
    hits = [e for e, uv in g.edges.items() if uv == ((u, v) if u <= v else (v, u))]
    if len(hits) != 1:
        raise ValueError(f"no unique edge {u}-{v}")
    return hits[0]


def _face_of_cycle(g: MultiGraph, cycle: list[int]) -> frozenset[int]:
    return frozenset(
        _edge_id_of(g, cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
    )


def cube_faces() -> list[frozenset[int]]:
    g = cube()
    faces = []
    for bit in range(3):
        for val in (0, 1):
            vs = {v for v in range(8) if (v >> bit) & 1 == val}
            faces.append(
                frozenset(e for e, (a, b) in g.edges.items() if a in vs and b in vs)
            )
    return faces


def wheel_faces(k: int) -> list[frozenset[int]]:
    g = wheel(k)
    faces = [_face_of_cycle(g, [i, (i + 1) % k, k]) for i in range(k)]
    faces.append(wheel_rim_edges(k))
    return faces


def k5_minus_faces() -> list[frozenset[int]]:
    g = k5_minus()
    return [_face_of_cycle(g, list(t)) for t in
            [(0, 1, 3), (1, 2, 3), (0, 2, 3), (0, 1, 4), (1, 2, 4), (0, 2, 4)]]


def prism_plus_faces() -> list[frozenset[int]]:
    g = prism_plus()
    cycles = [[0, 1, 4], [0, 4, 3], [1, 2, 5, 4], [0, 2, 5, 3], [0, 1, 2], [3, 4, 5]]
    return [_face_of_cycle(g, c) for c in cycles]


def double_fan_faces() -> list[frozenset[int]]:
    g = double_fan()
    cycles = [[0, 1, 4], [1, 2, 4], [2, 3, 4], [0, 1, 5], [1, 2, 5], [2, 3, 5],
              [0, 4, 3, 5]]
    return [_face_of_cycle(g, c) for c in cycles]


def double_fan_dual() -> MultiGraph:
    return dual_from_faces(double_fan(), double_fan_faces())


# -- stored dual pairs -------------------------------------------------------


def _pair_via_faces(
    g: MultiGraph, faces: list[frozenset[int]], reference: MultiGraph
) -> dict[int, int]:
    """Edge bijection g -> reference through the face dual.

    The face dual carries g's edge ids; an isomorphism onto the reference
    labelling then identifies each dual edge with a reference edge id.
    """
    dual = dual_from_faces(g, faces)
    iso = find_isomorphism(dual, reference)
    if iso is None:
        raise ValueError("face dual does not match the reference graph")
    return {
        e: _edge_id_of(reference, iso[a], iso[b]) for e, (a, b) in dual.edges.items()
    }


def dual_pairs() -> list[tuple[str, MultiGraph, MultiGraph, dict[int, int]]]:
    """Named matroid-dual pairs with explicit edge bijections.

    Self-dual graphs appear paired with themselves under a nonidentity edge
    bijection.  Validation (complement of every spanning tree maps to a
    spanning tree) lives in the test suite.
    """
    out = []
    out.append(("W4", wheel(4), wheel(4), _pair_via_faces(wheel(4), wheel_faces(4), wheel(4))))
    out.append(("W5", wheel(5), wheel(5), _pair_via_faces(wheel(5), wheel_faces(5), wheel(5))))
    out.append(("K5-/prism", k5_minus(), prism(), _pair_via_faces(k5_minus(), k5_minus_faces(), prism())))
    out.append(("P+", prism_plus(), prism_plus(), _pair_via_faces(prism_plus(), prism_plus_faces(), prism_plus())))
    out.append(("cube/octahedron", cube(), octahedron(), _pair_via_faces(cube(), cube_faces(), octahedron())))
    dfd = double_fan_dual()
    out.append(("D/D*", double_fan(), dfd, {e: e for e in double_fan().edges}))
    return out
