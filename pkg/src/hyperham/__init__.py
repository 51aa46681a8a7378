"""Exact computations on parity-obstructed extremal k-graphs and their
Hamilton (k/2)-cycles."""

__version__ = "0.1.0"

from .core import (Bipartition, DegreeProfile, Hypergraph, Parity, as_mask, degree,
                   degree_counts, edit_distance, members, min_d_degree, set_parity, vertex_set)
from .errors import (BudgetExceeded, DuplicateEdgeWarning, HyperhamError, IncompatibleHypergraphsError,
                     InvalidInputError, InvalidPatternError, InvalidQueryError, InvalidSpecError,
                     InvalidWitnessError, NoCertificateError, ParseError)
from .extremal import (ExtremalSpec, Variant, build, build_star, codegree_formula, enumerate_family,
                       parity_graph, threshold_bruteforce, threshold_codegree)
from .io import digest, emit, load, parse, save
from .parity import (BinaryRepresentation, CertificateKind, ParityCertificate, binary_representation,
                     certify_non_hamiltonian, check_certificate, find_patterned_path)
from .solver import (AbsorbingPair, CycleWitness, MatchingWitness, PathWitness, SearchResult,
                     count_connecting_sets, find_absorbing_path, find_half_path,
                     find_hamilton_half_cycle, find_hamilton_l_cycle, find_perfect_matching,
                     solve_half_cycle, solve_half_path, solve_l_cycle, solve_perfect_matching,
                     split_into_matchings, verify)
from .structure import (Closeness, SetClass, SetClassKind, classify, closeness,
                        find_bridge_pair, find_three_edges, forbidden_intersection_ok,
                        is_intersecting, is_substar, max_forbidden_intersection_family)

__all__ = [
    "Bipartition",
    "DegreeProfile",
    "Hypergraph",
    "Parity",
    "as_mask",
    "degree",
    "degree_counts",
    "edit_distance",
    "members",
    "min_d_degree",
    "set_parity",
    "vertex_set",
    "BudgetExceeded",
    "DuplicateEdgeWarning",
    "HyperhamError",
    "IncompatibleHypergraphsError",
    "InvalidInputError",
    "InvalidPatternError",
    "InvalidQueryError",
    "InvalidSpecError",
    "InvalidWitnessError",
    "NoCertificateError",
    "ParseError",
    "ExtremalSpec",
    "Variant",
    "build",
    "build_star",
    "codegree_formula",
    "enumerate_family",
    "parity_graph",
    "threshold_bruteforce",
    "threshold_codegree",
    "digest",
    "emit",
    "load",
    "parse",
    "save",
    "BinaryRepresentation",
    "CertificateKind",
    "ParityCertificate",
    "binary_representation",
    "certify_non_hamiltonian",
    "check_certificate",
    "find_patterned_path",
    "AbsorbingPair",
    "CycleWitness",
    "MatchingWitness",
    "PathWitness",
    "SearchResult",
    "count_connecting_sets",
    "find_absorbing_path",
    "find_half_path",
    "find_hamilton_half_cycle",
    "find_hamilton_l_cycle",
    "find_perfect_matching",
    "solve_half_cycle",
    "solve_half_path",
    "solve_l_cycle",
    "solve_perfect_matching",
    "split_into_matchings",
    "verify",
    "Closeness",
    "SetClass",
    "SetClassKind",
    "classify",
    "closeness",
    "find_bridge_pair",
    "find_three_edges",
    "forbidden_intersection_ok",
    "is_intersecting",
    "is_substar",
    "max_forbidden_intersection_family",
]
