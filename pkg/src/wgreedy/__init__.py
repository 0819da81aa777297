"""Weighted greedy-type bases: sparse vectors, norms, set-weights, the
thresholding greedy algorithm, brute-force oracles and verification suites."""
from .core import SparseVector, indicator, project, signed_indicator, sgn
from .spaces import NormSpace, get_space, m3_space, norm_lp
from .tga import chebyshev_sum, greedy_sets, greedy_sum, partial_sum, truncate
from .weights import SetWeight, cardinality, get_weight, norm_induced, weight

__version__ = "0.1.0"

__all__ = [
    "SparseVector", "indicator", "project", "signed_indicator", "sgn",
    "NormSpace", "get_space", "m3_space", "norm_lp",
    "chebyshev_sum", "greedy_sets", "greedy_sum", "partial_sum", "truncate",
    "SetWeight", "cardinality", "get_weight", "norm_induced", "weight",
]
