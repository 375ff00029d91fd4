"""Splitting of 5-edge configurations in graphs.

A 5-configuration S in a graph G splits when G, or a graph derived from G by
deleting or contracting a configuration edge, has a low-order separation that
divides S.  This package computes splitting verdicts (combinatorially and via
Dodgson polynomials), graph width and caterpillar width, enhanced graphs with
protected edges, minor containment, and the exhaustive catalog of
minor-minimal non-split enhanced graphs.
"""

from .graph_core import (
    GraphSeparation,
    MultiGraph,
    blocks,
    boundary,
    connected_components,
    contract_edge,
    delete_edge,
    delete_edges,
    delete_vertex,
    enumerate_low_order_separations,
    find_isomorphism,
    from_graph6,
    is_connected,
    is_k_connected,
    is_matroid_dual_pair,
    load_graph,
    parse_graph_text,
    pieces,
    render_graph_text,
    separation_order,
    spanning_tree_count,
    spanning_trees,
)
from .kirchhoff import (
    DodgsonSpec,
    MatrixConvention,
    default_convention,
    dodgson,
    dodgson_via_trees,
    five_invariant,
    kirchhoff_poly,
    thirty_dodgsons,
)
from .matroid import (
    FreeMatroid,
    GraphicMatroid,
    IntersectionOutcome,
    MinorOracle,
    RankOracle,
    caterpillar_width,
    common_tree_exists,
    matroid_intersection,
    matroid_sep_order,
)
from .minors import (
    CatalogEntry,
    MinorPattern,
    assign_dual_partners,
    canonical_enhanced_key,
    canonical_form,
    canonical_graph_key,
    canonical_labeling,
    enhanced_children,
    enhanced_has_minor,
    f0,
    f0_free,
    family_label,
    find_dual_bijection,
    has_minor,
    has_rooted_minor,
    parse_catalog,
    render_catalog,
)
from .poly import MultiPoly, divexact, parse_poly
from .search import (
    SearchConfig,
    VerifyReport,
    build_catalog,
    enumerate_underlying,
    find_minimal_nonsplit,
    verify_catalog,
)
from .splitting import (
    EnhancedGraph,
    SplitVerdict,
    SplitWitness,
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
from .width import graph_width, has_width_le, ordering_width

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "DodgsonSpec",
    "EnhancedGraph",
    "FreeMatroid",
    "GraphSeparation",
    "GraphicMatroid",
    "IntersectionOutcome",
    "MatrixConvention",
    "MinorOracle",
    "MinorPattern",
    "MultiGraph",
    "MultiPoly",
    "RankOracle",
    "SearchConfig",
    "SplitVerdict",
    "SplitWitness",
    "VerifyReport",
    "assign_dual_partners",
    "association_roundtrip_ok",
    "blocks",
    "boundary",
    "build_catalog",
    "canonical_enhanced_key",
    "canonical_form",
    "canonical_graph_key",
    "canonical_labeling",
    "caterpillar_width",
    "common_tree_exists",
    "config_splits",
    "connected_components",
    "contract_edge",
    "default_convention",
    "delete_edge",
    "delete_edges",
    "delete_vertex",
    "dodgson",
    "dodgson_via_trees",
    "divexact",
    "enhanced_children",
    "enhanced_config_splits",
    "enhanced_has_minor",
    "enhanced_splits",
    "enumerate_low_order_separations",
    "enumerate_underlying",
    "f0",
    "f0_free",
    "family_label",
    "find_dual_bijection",
    "find_isomorphism",
    "find_minimal_nonsplit",
    "five_invariant",
    "from_enhanced",
    "from_graph6",
    "graph_splits",
    "graph_width",
    "has_minor",
    "has_rooted_minor",
    "has_width_le",
    "is_connected",
    "is_k_connected",
    "is_matroid_dual_pair",
    "kirchhoff_poly",
    "load_graph",
    "matroid_intersection",
    "matroid_sep_order",
    "ordering_width",
    "parse_catalog",
    "parse_graph_text",
    "parse_poly",
    "pieces",
    "plain",
    "render_catalog",
    "render_graph_text",
    "separation_order",
    "spanning_tree_count",
    "spanning_trees",
    "thirty_dodgsons",
    "to_enhanced",
    "verify_catalog",
    "witness_holds",
]
