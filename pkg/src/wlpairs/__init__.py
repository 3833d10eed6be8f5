"""Graph pairs for probing Weisfeiler-Lehman expressiveness, with distinguishers and paired-comparison statistics."""

from .graph import Graph, Permutation, all_pairs_distances, apply_permutation, ego_net
from .graph6 import parse_graph6, write_graph6
from .isomorphism import is_isomorphic
from .wl import ColorRefinementResult, WlConfig, distinguishes, refine_1wl, refine_kfwl, refine_kwl

__version__ = "0.1.0"

__all__ = [
    "ColorRefinementResult",
    "Graph",
    "Permutation",
    "WlConfig",
    "all_pairs_distances",
    "apply_permutation",
    "distinguishes",
    "ego_net",
    "is_isomorphic",
    "parse_graph6",
    "refine_1wl",
    "refine_kfwl",
    "refine_kwl",
    "write_graph6",
]
