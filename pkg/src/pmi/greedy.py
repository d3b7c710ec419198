"""Greedy blocking over the leader matroid.

Exact when there is a single follower group and all weights are distinct;
otherwise a heuristic with no approximation guarantee.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Iterable

from pmi.matroid import LeaderMatroid
from pmi.model import (
    Instance,
    SolveResult,
    SortedInstance,
    group_thresholds,
    make_result,
    marginal_from_thresholds,
    psi,
)

TIE_BREAKS = ("weight", "index")


def _sorted(instance: Instance | SortedInstance) -> SortedInstance:
    return instance if isinstance(instance, SortedInstance) else instance.sorted_view


def solve_greedy(
    instance: Instance | SortedInstance,
    matroid: LeaderMatroid | None = None,
    tie_break: str = "weight",
) -> SolveResult:
    """Repeatedly block the feasible element with the most negative marginal.

    ``tie_break`` orders equal marginals: ``"weight"`` prefers the heavier
    element (then the lower index), ``"index"`` the lower index.  The
    result's ``exact`` flag is true iff ``k_f == 1`` and weights are
    distinct, the case where the greedy answer is provably optimal.
    ``trace`` lists ``psi`` after every step, starting from ``psi(0)``.
    """
    if tie_break not in TIE_BREAKS:
        raise ValueError(f"tie_break must be one of {TIE_BREAKS}")
    s = _sorted(instance)
    inst = s.base
    n = inst.n
    if matroid is None:
        matroid = LeaderMatroid.from_instance(inst)
    partition = matroid.is_partition
    room = list(matroid.budgets) if partition else None

    x = [0] * n
    value = psi(s, x)
    trace = [value]
    tests = 0
    while True:
        thresholds = [group_thresholds(s, x, k) for k in range(inst.k_f)]
        best_key = None
        best_i = -1
        best_delta = 0
        for i in range(n):
            if x[i]:
                continue
            tests += 1
            if partition:
                if room[matroid.owner[i]] == 0:
                    continue
            else:
                x[i] = 1
                ok = matroid.is_independent(x)
                x[i] = 0
                if not ok:
                    continue
            k = inst.follower_of[i]
            p = s.position[i]
            delta = marginal_from_thresholds(s, p, inst.follower_budgets[k], *thresholds[k])
            if tie_break == "weight":
                key = (delta, -s.sorted_weights[p], i)
            else:
                key = (delta, i)
            if best_key is None or key < best_key:
                best_key, best_i, best_delta = key, i, delta
        if best_key is None:
            break
        x[best_i] = 1
        if partition:
            room[matroid.owner[best_i]] -= 1
        value += best_delta
        trace.append(value)

    exact = inst.k_f == 1 and inst.distinct_weights()
    result = make_result(
        s,
        x,
        "greedy",
        exact=exact,
        stats={"iterations": len(trace) - 1, "independence_tests": tests},
        trace=trace,
    )
    if result.objective != value:
        raise AssertionError(f"greedy bookkeeping {value} != psi(x_g) = {result.objective}")
    return result


@dataclass(frozen=True)
class GapRow:
    M: Any
    greedy: Fraction
    optimal: Fraction

    @property
    def ratio(self) -> Fraction:
        return self.greedy / self.optimal


def greedy_gap_family(M_values: Iterable[Any], template=None) -> list[GapRow]:
    """Greedy versus optimal value on the ``(1, 2, 3, M, M)`` family."""
    from pmi.catalog import example1_instance
    from pmi.dual import solve_dual

    build = template or example1_instance
    rows = []
    for M in M_values:
        if Fraction(M) <= 3:
            raise ValueError(f"M={M} must exceed the small weights (3)")
        inst = build(M)
        g = solve_greedy(inst)
        d = solve_dual(inst)
        rows.append(GapRow(M, g.value, d.value))
    return rows
