"""Exact and heuristic solvers for partition matroid interdiction."""

from pmi.catalog import cycle4_graph, example1_instance, figure1_instance
from pmi.dp import solve_dp, stage_psi, transition
from pmi.dual import dual_inner_value, solve_dual
from pmi.greedy import greedy_gap_family, solve_greedy
from pmi.io import export_ilp, parse_graph, parse_instance, serialize_instance
from pmi.matroid import LeaderMatroid, max_weight_independent_set
from pmi.model import (
    FollowerResponse,
    Instance,
    SolveResult,
    SortedInstance,
    follower_best_response,
    make_instance,
    marginal_decrease,
    psi,
    sort_weights,
    validate_instance,
)
from pmi.oracle import Graph, mis_brute_force, solve_oracle_full, solve_oracle_leader
from pmi.reduction import gen_random, reduce_mis
from pmi.solvers import select_algorithm, solve

__all__ = [
    "FollowerResponse",
    "Graph",
    "Instance",
    "LeaderMatroid",
    "SolveResult",
    "SortedInstance",
    "cycle4_graph",
    "dual_inner_value",
    "example1_instance",
    "export_ilp",
    "figure1_instance",
    "follower_best_response",
    "gen_random",
    "greedy_gap_family",
    "make_instance",
    "marginal_decrease",
    "max_weight_independent_set",
    "mis_brute_force",
    "parse_graph",
    "parse_instance",
    "psi",
    "reduce_mis",
    "select_algorithm",
    "serialize_instance",
    "solve",
    "solve_dp",
    "solve_dual",
    "solve_greedy",
    "solve_oracle_full",
    "solve_oracle_leader",
    "sort_weights",
    "stage_psi",
    "transition",
    "validate_instance",
]
