"""Cycle bases with low maximum edge participation, plus the tools to check them."""

from .basis import Cycle, CycleBasis
from .baselines import cheeger_exact, fundamental_basis, min_weight_cycle_basis
from .engine import VARIANTS, RunStats, VariantConfig, build_cycle_basis, variant
from .gf2 import (
    VerificationReport, girth, girth_lower_bound, gf2_rank, max_edge_participation,
    verify_basis, verify_weakly_fundamental,
)
from .graph import (
    BfsResult, ContractViolation, EdgeListParseError, GraphError, MultiGraph, StructuralError,
    bfs, cycle_from_cross_edge, parse_edge_list, read_edge_list, write_edge_list,
)
from .randgraph import random_connected_regular, random_regular

__all__ = [
    "Cycle", "CycleBasis", "cheeger_exact", "fundamental_basis", "min_weight_cycle_basis",
    "VARIANTS", "RunStats", "VariantConfig", "build_cycle_basis", "variant",
    "VerificationReport", "girth", "girth_lower_bound", "gf2_rank", "max_edge_participation",
    "verify_basis", "verify_weakly_fundamental", "BfsResult", "ContractViolation",
    "EdgeListParseError", "GraphError", "MultiGraph", "StructuralError", "bfs",
    "cycle_from_cross_edge", "parse_edge_list", "read_edge_list", "write_edge_list",
    "random_connected_regular", "random_regular",
]
__version__ = "0.1.0"
