"""Solver registry and automatic algorithm choice."""

from __future__ import annotations

from pmi.dp import solve_dp
from pmi.dual import solve_dual
from pmi.greedy import solve_greedy
from pmi.model import Instance, SolveResult
from pmi.oracle import solve_oracle_full, solve_oracle_leader

ALGORITHMS = ("auto", "dual", "dp", "greedy", "oracle-full", "oracle-leader")


def select_algorithm(instance: Instance) -> str:
    """``dual`` when ``k_f <= 2 k_l`` (ties included), else ``dp``."""
    return "dual" if instance.k_f <= 2 * instance.k_l else "dp"


def solve(instance: Instance, algo: str = "auto", threads: int = 1) -> SolveResult:
    if algo == "auto":
        algo = select_algorithm(instance)
    if algo == "dual":
        return solve_dual(instance, threads=threads)
    if algo == "dp":
        return solve_dp(instance)
    if algo == "greedy":
        return solve_greedy(instance)
    if algo == "oracle-full":
        return solve_oracle_full(instance)
    if algo == "oracle-leader":
        return solve_oracle_leader(instance)
    raise ValueError(f"unknown algorithm {algo!r}; choose from {ALGORITHMS}")
