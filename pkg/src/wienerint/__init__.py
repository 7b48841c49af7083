"""Exact Wiener index toolkit for trees.

The package constructs caterpillar families whose Wiener indices tile
arithmetic progressions, applies the +4 leaf relocation move to fill
them, indexes everything reachable for a given vertex count, answers
inverse queries (n, w) -> tree, and audits printed closed forms against
direct computation.  All arithmetic is exact.
"""

from __future__ import annotations

from . import errors
from .caterpillar import CaterpillarSpec, Family, construct, formula_value, param_domain
from .oracle import enumerate_trees, exact_interval, exact_spectrum, random_labeled_tree
from .spectrum import ParameterBounds, SpectrumIndex, bounds, build_index, measured_interval, solve
from .transform import Progression, ToppleWindow, apply_move, eligible, max_steps, progression, schedule
from .tree_core import (
    Tree,
    build_tree,
    canonical_code,
    distance_sum,
    format_edge_list,
    parse_edge_list,
    path_tree,
    path_wiener,
    star_tree,
    star_wiener,
    wiener,
    wiener_reference,
)

__version__ = "0.1.0"

__all__ = [
    "errors",
    "Tree",
    "build_tree",
    "path_tree",
    "star_tree",
    "path_wiener",
    "star_wiener",
    "wiener",
    "wiener_reference",
    "distance_sum",
    "canonical_code",
    "parse_edge_list",
    "format_edge_list",
    "Family",
    "CaterpillarSpec",
    "param_domain",
    "construct",
    "formula_value",
    "ToppleWindow",
    "Progression",
    "eligible",
    "apply_move",
    "schedule",
    "max_steps",
    "progression",
    "ParameterBounds",
    "SpectrumIndex",
    "bounds",
    "build_index",
    "measured_interval",
    "solve",
    "enumerate_trees",
    "exact_spectrum",
    "exact_interval",
    "random_labeled_tree",
    "__version__",
]
