"""Exact Cayley-graph exploration and almost-convexity measurement for
Heisenberg lattices, hyperbolic groups, and their central and finite
extensions, with a Sol lattice as the negative control."""

from .convexity import ConvexityProfile, ac2_consistency_report, ac_profile
from .explorer import Ball, build_ball, cached_ball, inside_path, sphere_pairs
from .geodesics import HexGeodesicTable, square_geodesic, standard_geodesic
from .groups import FreeGroup, GroupInterface, IntegerLattice
from .lattice import black_triangle_count, signed_area
from .nil import NilGenSet, NilGroup, SaturationSpec, central_power_length_bound
from .sol import SolLattice
from .words import Alphabet, Word, free_reduce, word_inverse

__version__ = "0.1.0"

__all__ = [
    "Alphabet", "Ball", "ConvexityProfile", "FreeGroup", "GroupInterface",
    "HexGeodesicTable", "IntegerLattice", "NilGenSet", "NilGroup",
    "SaturationSpec", "SolLattice", "Word", "ac2_consistency_report",
    "ac_profile", "black_triangle_count", "build_ball", "cached_ball",
    "central_power_length_bound", "free_reduce", "inside_path",
    "signed_area", "sphere_pairs", "square_geodesic", "standard_geodesic",
    "word_inverse",
]
