"""Small named instances used as regression fixtures and in the docs."""

from __future__ import annotations

from typing import Any

from pmi.model import Instance, make_instance
from pmi.oracle import Graph


def figure1_instance() -> Instance:
    """Five elements, two leader groups and two follower groups, all budgets 1.

    Optimal value 5, reached by blocking elements 1 and 2 (0-based).
    """
    return make_instance(
        weights=[1, 2, 3, 4, 5],
        leader_groups=[[0, 1], [2, 3, 4]],
        leader_budgets=[1, 1],
        follower_groups=[[1, 2], [0, 3, 4]],
        follower_budgets=[1, 1],
        meta={"name": "figure1"},
    )


def example1_instance(M: Any = 100) -> Instance:
    """Uniform leader matroid of rank 2 against two follower groups.

    Weights ``(1, 2, 3, M, M)``; greedy blocking reaches ``M + 1`` while the
    optimum is 3.
    """
    return make_instance(
        weights=[1, 2, 3, M, M],
        leader_groups=[[0, 1, 2, 3, 4]],
        leader_budgets=[2],
        follower_groups=[[0, 1, 2], [3, 4]],
        follower_budgets=[1, 1],
        meta={"name": "example1", "M": str(M)},
    )


def cycle4_graph() -> Graph:
    """The 4-cycle v1-v2-v3-v4-v1 with edges in that order (0-based vertices)."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
