"""Independence polynomials of graphs and trees and the moduli of their roots."""
from .graph import (
    CapacityError,
    FamilyId,
    Graph,
    build_family,
    complete_graph,
    disjoint_union,
    empty_graph,
    from_edges,
    is_well_covered,
    maximal_independent_sets,
    path_graph,
    spider_tree,
    spider_tree_prime,
    star_graph,
    star_operation,
)
from .formats import from_edge_list, from_graph6, to_edge_list, to_graph6
from .enumerate import (
    are_isomorphic,
    canonical_key,
    count_graphs,
    count_trees,
    enumerate_forests,
    enumerate_graphs,
    enumerate_trees,
)
from .indpoly import (
    Annulus,
    IntPoly,
    alpha,
    closed_form,
    coefficient_ratios,
    ek_annulus,
    independence_polynomial,
    independence_polynomial_brute,
    independence_polynomial_tree,
    max_coeff_ratio,
    mu,
    xi,
)
from .roots import (
    RealRootCertificate,
    RootFindingError,
    RootReport,
    certify_real_root_left_of,
    find_roots,
    max_moduli_batch,
)
from .survey import CheckReport, SurveyRecord, maxmod_exhaustive

__all__ = [
    "Annulus", "CapacityError", "CheckReport", "FamilyId", "Graph", "IntPoly",
    "RealRootCertificate", "RootFindingError", "RootReport", "SurveyRecord",
    "alpha", "are_isomorphic", "build_family", "canonical_key", "certify_real_root_left_of",
    "closed_form", "coefficient_ratios", "complete_graph", "count_graphs", "count_trees",
    "disjoint_union", "ek_annulus", "empty_graph", "enumerate_forests", "enumerate_graphs",
    "enumerate_trees", "find_roots", "from_edge_list", "from_edges", "from_graph6",
    "independence_polynomial", "independence_polynomial_brute", "independence_polynomial_tree",
    "is_well_covered", "max_coeff_ratio", "max_moduli_batch", "maximal_independent_sets",
    "maxmod_exhaustive", "mu", "path_graph", "spider_tree", "spider_tree_prime", "star_graph",
    "star_operation", "to_edge_list", "to_graph6", "xi",
]

__version__ = "0.1.0"
