"""Many-sided separations, laminar families and deciduous tree decompositions."""

from .builder import build_deciduous_td, find_outermost, locations, side_of
from .decomposition import TreeDecomposition, is_deciduous, leaf_bipartition, tau, tau_star, validate_td, width
from .errors import LamsepError
from .graph import CutsetVerdict, Graph, build_graph, enum_minimal_cutsets, is_minimal_cutset
from .separation import (
    ManySidedSeparation,
    SeparationFamily,
    coarsen,
    crossing_pair,
    is_laminar,
    msep_from_cutset,
    noncrossing,
    project,
    project_family,
    validate_msep,
)

__version__ = "0.1.0"

__all__ = [
    "CutsetVerdict",
    "Graph",
    "LamsepError",
    "ManySidedSeparation",
    "SeparationFamily",
    "TreeDecomposition",
    "build_deciduous_td",
    "build_graph",
    "coarsen",
    "crossing_pair",
    "enum_minimal_cutsets",
    "find_outermost",
    "is_deciduous",
    "is_laminar",
    "is_minimal_cutset",
    "leaf_bipartition",
    "locations",
    "msep_from_cutset",
    "noncrossing",
    "project",
    "project_family",
    "side_of",
    "tau",
    "tau_star",
    "validate_msep",
    "validate_td",
    "width",
]
