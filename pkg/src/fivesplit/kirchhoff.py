"""Kirchhoff polynomials, Dodgson polynomials, and the 5-invariant.

For a connected graph G with n vertices and m edges, fix an expanded Laplacian

    M = [ A      X ]
        [ -X^T   0 ]

where A is the m x m diagonal matrix of edge variables x_e and X is the m x
(n-1) signed incidence matrix with one vertex column removed.  Then det M is
the Kirchhoff polynomial (the spanning tree generating function in the
complements), and for I, J, K subsets of E with |I| = |J| and K disjoint from
I and J, the Dodgson polynomial is

    P(I,J;K) = det M(I,J)_K

obtained by striking rows I, columns J, and zeroing the diagonal entries of K.
Dodgson polynomials depend on the chosen edge order, orientations, and removed
vertex only up to a global sign.

Everything here is exact integer arithmetic; determinants use fraction-free
Bareiss elimination over the polynomial ring, and an independent expansion
over spanning trees provides a second route with matching signs.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .graph_core import MultiGraph, spanning_trees
from .poly import MultiPoly, divexact


@dataclass(frozen=True)
class MatrixConvention:
    """Everything the expanded Laplacian depends on.

    edge_order: all edge ids, the row/column order of the edge block.
    orientations: (edge, tail, head) per edge; the incidence column gets +1 at
    the tail and -1 at the head.
    removed_vertex: the vertex whose column is struck from the incidence.
    """

    edge_order: tuple[int, ...]
    orientations: tuple[tuple[int, int, int], ...]
    removed_vertex: int

    def orientation_map(self) -> dict[int, tuple[int, int]]:
        return {e: (t, h) for e, t, h in self.orientations}


def default_convention(g: MultiGraph) -> MatrixConvention:
    """Edges ascending by id, orientation low -> high endpoint, highest vertex removed."""
    if g.n == 0:
        raise ValueError("convention needs at least one vertex")
    order = tuple(sorted(g.edges))
    orient = tuple((e, g.edges[e][0], g.edges[e][1]) for e in order)
    return MatrixConvention(order, orient, max(g.vertices))


def validate_convention(g: MultiGraph, conv: MatrixConvention) -> None:
    if sorted(conv.edge_order) != sorted(g.edges):
        raise ValueError("convention edge order does not match the graph")
    omap = conv.orientation_map()
    for e, (u, v) in g.edges.items():
        if e not in omap or set(omap[e]) != ({u, v} if u != v else {u}):
            raise ValueError(f"convention orientation for edge {e} is inconsistent")
    if conv.removed_vertex not in g.vertices:
        raise ValueError("removed vertex is not a vertex of the graph")


@dataclass(frozen=True)
class DodgsonSpec:
    i_set: frozenset[int]
    j_set: frozenset[int]
    k_set: frozenset[int]

    def validate(self, g: MultiGraph) -> None:
        for s in (self.i_set, self.j_set, self.k_set):
            unknown = s - g.edge_ids()
            if unknown:
                raise ValueError(f"spec names unknown edges {sorted(unknown)}")
        if len(self.i_set) != len(self.j_set):
            raise ValueError("|I| and |J| must agree")
        if self.k_set & (self.i_set | self.j_set):
            raise ValueError("K must be disjoint from I and J")


def _poly_det(mat: list[list[MultiPoly]]) -> MultiPoly:
    """Fraction-free Bareiss determinant with full pivoting.

    Pivots prefer entries with few terms and low degree, which keeps the
    arithmetic on the integer constants of the incidence blocks for as long as
    possible.  Row and column swaps each flip the sign.
    """
    n = len(mat)
    if n == 0:
        return MultiPoly.const(1)
    m = [row[:] for row in mat]
    sign = 1
    prev = MultiPoly.const(1)
    for k in range(n):
        pivot = None
        for i in range(k, n):
            for j in range(k, n):
                p = m[i][j]
                if p.is_zero():
                    continue
                lead_mono, lead_c = p.leading()
                score = (len(p.terms), sum(e for _, e in lead_mono), abs(lead_c), i, j)
                if pivot is None or score < pivot[0]:
                    pivot = (score, i, j)
        if pivot is None:
            return MultiPoly.zero()
        _, pi, pj = pivot
        if pi != k:
            m[k], m[pi] = m[pi], m[k]
            sign = -sign
        if pj != k:
            for row in m:
                row[k], row[pj] = row[pj], row[k]
            sign = -sign
        if k == n - 1:
            break
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = divexact(m[i][j] * m[k][k] - m[i][k] * m[k][j], prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det.negate() if sign < 0 else det


def _incidence_entry(conv_tail: int, conv_head: int, w: int) -> int:
    if conv_tail == conv_head:
        return 0
    if w == conv_tail:
        return 1
    if w == conv_head:
        return -1
    return 0


def _dodgson_matrix(
    g: MultiGraph, spec: DodgsonSpec, conv: MatrixConvention
) -> list[list[MultiPoly]]:
    omap = conv.orientation_map()
    vcols = [v for v in sorted(g.vertices) if v != conv.removed_vertex]
    rows = [e for e in conv.edge_order if e not in spec.i_set]
    cols = [e for e in conv.edge_order if e not in spec.j_set]
    zero = MultiPoly.zero()
    mat: list[list[MultiPoly]] = []
    for e in rows:
        t, h = omap[e]
        row = []
        for f in cols:
            if e == f and e not in spec.k_set:
                row.append(MultiPoly.variable(e))
            else:
                row.append(zero)
        for w in vcols:
            c = _incidence_entry(t, h, w)
            row.append(MultiPoly.const(c) if c else zero)
        mat.append(row)
    for w in vcols:
        row = []
        for f in cols:
            t, h = omap[f]
            c = -_incidence_entry(t, h, w)
            row.append(MultiPoly.const(c) if c else zero)
        row.extend(zero for _ in vcols)
        mat.append(row)
    return mat


def dodgson(
    g: MultiGraph, spec: DodgsonSpec, convention: MatrixConvention | None = None
) -> MultiPoly:
    """Dodgson polynomial by symbolic determinant; multilinear by construction."""
    spec.validate(g)
    conv = convention or default_convention(g)
    validate_convention(g, conv)
    det = _poly_det(_dodgson_matrix(g, spec, conv))
    assert det.max_exponent() <= 1, "Dodgson polynomial must be multilinear"
    assert not det.variables() & (spec.i_set | spec.j_set | spec.k_set)
    return det


def dodgson_via_trees(
    g: MultiGraph, spec: DodgsonSpec, convention: MatrixConvention | None = None
) -> MultiPoly:
    """Dodgson polynomial by expansion over spanning trees; matches dodgson exactly.

    Expanding det M(I,J)_K multilinearly in the edge variables, the monomial
    with support U survives exactly when both R = (E - I) - U and C = (E - J) - U
    are spanning trees, contributing

        sgn(U) * det(X[R]) * det(X[C]),    sgn(U) = prod_{e in U} (-1)^{r(e)+c(e)}

    with r(e), c(e) the positions of e among the rows E - I and the columns
    E - J, and X[T] the tree-rows incidence minor (determinant +-1).
    """
    spec.validate(g)
    conv = convention or default_convention(g)
    validate_convention(g, conv)
    omap = conv.orientation_map()
    vcols = [v for v in sorted(g.vertices) if v != conv.removed_vertex]
    rows = [e for e in conv.edge_order if e not in spec.i_set]
    cols = [e for e in conv.edge_order if e not in spec.j_set]
    rowpos = {e: i for i, e in enumerate(rows)}
    colpos = {e: i for i, e in enumerate(cols)}
    all_edges = g.edge_ids()

    tree_sign: dict[frozenset[int], int] = {}
    for t in spanning_trees(g):
        order = sorted(t)
        mat = [
            [_incidence_entry(*omap[e], w) for w in vcols]
            for e in order
        ]
        tree_sign[t] = _int_det_small(mat)

    out = MultiPoly.zero()
    forbidden = spec.j_set | spec.k_set
    for r_tree, sr in tree_sign.items():
        if r_tree & spec.i_set:
            continue
        u = (all_edges - spec.i_set) - r_tree
        if u & forbidden:
            # the monomial support must avoid I, J and K
            continue
        c_tree = (all_edges - spec.j_set) - u
        sc = tree_sign.get(c_tree)
        if sc is None:
            continue
        sgn = sr * sc
        for e in u:
            sgn *= -1 if (rowpos[e] + colpos[e]) & 1 else 1
        out = out + MultiPoly.monomial(u, sgn)
    assert out.max_exponent() <= 1
    return out


def _int_det_small(mat: list[list[int]]) -> int:
    from .graph_core import _int_det

    return _int_det(mat)


def kirchhoff_poly(
    g: MultiGraph, convention: MatrixConvention | None = None
) -> MultiPoly:
    """Kirchhoff polynomial: sum over spanning trees of the complement monomials.

    Computed both as a symbolic determinant and as the explicit tree sum; the
    two must agree exactly after normalising the determinant sign positive.
    """
    conv = convention or default_convention(g)
    validate_convention(g, conv)
    by_trees = MultiPoly.zero()
    all_edges = g.edge_ids()
    for t in spanning_trees(g):
        by_trees = by_trees + MultiPoly.monomial(all_edges - t)
    by_det = dodgson(g, DodgsonSpec(frozenset(), frozenset(), frozenset()), conv)
    by_det = by_det.sign_normalised()
    assert by_det == by_trees, "determinant and tree-sum routes disagree"
    return by_trees


def thirty_dodgsons(
    g: MultiGraph,
    config: Sequence[int] | frozenset[int],
    convention: MatrixConvention | None = None,
) -> list[tuple[DodgsonSpec, MultiPoly]]:
    """The 30 Dodgson polynomials of a 5-edge configuration.

    One polynomial per choice of a distinguished edge e of S, a pairing of the
    remaining four into {a,b} and {c,d}, and a side: P({a,b},{c,d};{e}) or
    P({a,b,e},{c,d,e}; {}).  Specs are deduplicated on the unordered pair
    {I, J}; exactly 30 remain.
    """
    s = sorted(set(config))
    if len(s) != 5:
        raise ValueError("a configuration has five distinct edges")
    if not set(s) <= set(g.edges):
        raise ValueError("configuration edges must belong to the graph")
    conv = convention or default_convention(g)
    seen: set[tuple] = set()
    out: list[tuple[DodgsonSpec, MultiPoly]] = []
    for e in s:
        rest = [f for f in s if f != e]
        a = rest[0]
        for b in rest[1:]:
            pair1 = frozenset([a, b])
            pair2 = frozenset(rest) - pair1
            for i_set, j_set, k_set in (
                (pair1, pair2, frozenset([e])),
                (pair1 | {e}, pair2 | {e}, frozenset()),
            ):
                lo, hi = sorted((tuple(sorted(i_set)), tuple(sorted(j_set))))
                key = (lo, hi, tuple(sorted(k_set)))
                if key in seen:
                    continue
                seen.add(key)
                spec = DodgsonSpec(frozenset(lo), frozenset(hi), k_set)
                out.append((spec, dodgson(g, spec, conv)))
    assert len(out) == 30
    return out


def five_invariant(
    g: MultiGraph,
    edges_ordered: Sequence[int],
    convention: MatrixConvention | None = None,
) -> MultiPoly:
    """The 5-invariant of an ordered 5-tuple of edges, sign-normalised.

    With edges (e1,...,e5),

        P({e1,e2},{e3,e4};{e5}) * P({e1,e3,e5},{e2,e4,e5})
      - P({e1,e3},{e2,e4};{e5}) * P({e1,e2,e5},{e3,e4,e5})

    which is independent of the ordering and of the matrix convention up to
    overall sign; the representative with positive leading coefficient is
    returned.
    """
    es = list(edges_ordered)
    if len(es) != 5 or len(set(es)) != 5:
        raise ValueError("need five distinct edges")
    e1, e2, e3, e4, e5 = es
    conv = convention or default_convention(g)

    def dd(i_set: set[int], j_set: set[int], k_set: set[int]) -> MultiPoly:
        return dodgson(g, DodgsonSpec(frozenset(i_set), frozenset(j_set), frozenset(k_set)), conv)

    term1 = dd({e1, e2}, {e3, e4}, {e5}) * dd({e1, e3, e5}, {e2, e4, e5}, set())
    term2 = dd({e1, e3}, {e2, e4}, {e5}) * dd({e1, e2, e5}, {e3, e4, e5}, set())
    return (term1 - term2).sign_normalised()


def five_invariant_all_orderings_agree(
    g: MultiGraph, config: Sequence[int], samples: int = 6
) -> bool:
    """Spot check helper: the 5-invariant over a few orderings, up to sign."""
    es = sorted(set(config))
    base = five_invariant(g, es)
    for perm in itertools.islice(itertools.permutations(es), 1, samples):
        if not five_invariant(g, list(perm)).equal_up_to_sign(base):
            return False
    return True
