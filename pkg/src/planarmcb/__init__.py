"""Minimum cycle bases, Gomory-Hu trees and min-cut oracles for plane graphs."""

from .cuts import (
    GomoryHuTree,
    MinCutOracle,
    apmc,
    build_mincut_oracle,
    gomory_hu,
    maxflow_reference,
    query_cut,
    query_weight,
    weight_vector,
)
from .errors import PlanarMcbError, ParseError
from .formats import parse_imcb, parse_plg, serialize_imcb, serialize_plg
from .generators import gen_lower_bound, gen_random_planar
from .gmcb_oracle import gf2_extract, greedy_mcb_explicit, oracle_basis
from .lexsp import lex_sp_tree
from .mcb_recursive import ImplicitMcb, expand_cycle, explicit_mcb, recursive_gmcb
from .planar_core import PlanarGraph, build_embedding, dual_graph, simplify_multigraph
from .separator import cycle_separator

__all__ = [
    "GomoryHuTree", "ImplicitMcb", "MinCutOracle", "ParseError", "PlanarGraph", "PlanarMcbError",
    "apmc", "build_embedding", "build_mincut_oracle", "cycle_separator", "dual_graph",
    "expand_cycle", "explicit_mcb", "gen_lower_bound", "gen_random_planar", "gf2_extract",
    "gomory_hu", "greedy_mcb_explicit", "lex_sp_tree", "maxflow_reference", "oracle_basis",
    "parse_imcb", "parse_plg", "query_cut", "query_weight", "recursive_gmcb", "serialize_imcb",
    "serialize_plg", "simplify_multigraph", "weight_vector",
]
