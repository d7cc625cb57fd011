"""Extremes of the sum of edge lengths of trees in linear arrangements."""
from .arrangement import LinearArrangement, random_arrangement, sum_edge_lengths
from .catalog import CatalogEntry, TreeStats, enumerate_unlabelled, tree_stats
from .oracle import ExtremalRecord, branch_and_bound_dmin, brute_force_extrema, sweep_extrema
from .scores import ScoreExtrema, ScoreReport, score_arrangement, score_extrema
from .tree import FreeTree, classify, degree_stats, from_edge_list, from_head_vector

__version__ = "0.1.0"

__all__ = [
    "CatalogEntry",
    "ExtremalRecord",
    "FreeTree",
    "LinearArrangement",
    "ScoreExtrema",
    "ScoreReport",
    "TreeStats",
    "branch_and_bound_dmin",
    "brute_force_extrema",
    "classify",
    "degree_stats",
    "enumerate_unlabelled",
    "from_edge_list",
    "from_head_vector",
    "random_arrangement",
    "score_arrangement",
    "score_extrema",
    "sum_edge_lengths",
    "sweep_extrema",
    "tree_stats",
]
