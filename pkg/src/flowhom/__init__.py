"""
flowhom - path homology of digraphs and control flow graphs.

Terminology:
    allowed path   = vertex sequence whose consecutive pairs are arcs
    Omega_p        = p-chains of allowed paths whose boundary stays allowed
    betti          = dim of path homology; reduced_betti drops one from beta_0
    nu             = cyclomatic complexity |A| - |V| + c
    flow graph     = unique source and target, strongly connected once the
                     target is merged into the source
    2FG            = flow graph whose branch vertices have outdegree 2
"""

__version__ = "0.1.0"

from flowhom.digraph import (
    Digraph,
    FlowGraph,
    canonicalize,
    k_partite_tower,
    series_compose,
    suspension,
    tower_flow_example,
    two_cycle,
    validate_flow_graph,
)
from flowhom.errors import (
    EmptyDigraphError,
    FlowhomError,
    GraphParseError,
    PathLimitExceeded,
)
from flowhom.homology import BettiProfile, betti, h1_generators
from flowhom.linalg import Field
from flowhom.metrics import MetricReport, compare, cyclomatic
from flowhom.oracle import brute_force_oracle
from flowhom.parse import loop_transform, parse_dot_subset, parse_edge_list

__all__ = [
    "__version__",
    "BettiProfile",
    "Digraph",
    "EmptyDigraphError",
    "Field",
    "FlowGraph",
    "FlowhomError",
    "GraphParseError",
    "MetricReport",
    "PathLimitExceeded",
    "betti",
    "brute_force_oracle",
    "canonicalize",
    "compare",
    "cyclomatic",
    "h1_generators",
    "k_partite_tower",
    "loop_transform",
    "parse_dot_subset",
    "parse_edge_list",
    "series_compose",
    "suspension",
    "tower_flow_example",
    "two_cycle",
    "validate_flow_graph",
]
