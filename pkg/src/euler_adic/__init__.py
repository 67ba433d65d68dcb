"""Exact combinatorics and measures for the Euler adic (Bratteli-Vershik) system."""

from .adic import compare, maximal_path_into, minimal_path_into, predecessor, successor, x_max, x_min
from .codec import OrderedPartition, clusters, ordered_partitions, path_to_perm, perm_to_path, project
from .combinatorics import binomial, eulerian, factorial, falls, rises
from .dimension import DimQuery, Variant, alpha, beta, dim_bruteforce, dim_formula, placement_count, ratio_table
from .graph import (
    Cylinder,
    Edge,
    Orientation,
    Turn,
    Vertex,
    count_paths_between,
    dim_vertex,
    enumerate_paths_to,
    incoming_edges,
    outgoing_edges,
)
from .measures import FiniteRank, Symmetric, check_consistency, check_invariance, cylinder_measure

__version__ = "0.1.0"
