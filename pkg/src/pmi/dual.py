"""Duality-based exact solver, polynomial for a fixed number of follower groups.

For every follower group the follower LP is replaced by its dual, whose
optimum sits at a breakpoint ``alpha_k = beta_{j_k}``.  Fixing the whole
breakpoint vector ``j`` leaves a linear objective in ``x`` that is
minimized by one maximum-weight independent set in the leader matroid.
"""

from __future__ import annotations

import itertools
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

from pmi.errors import EnumerationBudgetExceeded
from pmi.matroid import LeaderMatroid, max_weight_independent_set
from pmi.model import (
    Instance,
    SolveResult,
    SortedInstance,
    as_decision,
    make_result,
)

#: Default cap on the number of breakpoint vectors ``(n+1)**k_f``.
DUAL_ENUMERATION_BUDGET = 10**7


def _sorted(instance: Instance | SortedInstance) -> SortedInstance:
    return instance if isinstance(instance, SortedInstance) else instance.sorted_view


def group_dual_value(s: SortedInstance, x: Sequence[int], k: int, j: int) -> int:
    """Dual objective of follower group ``k`` at breakpoint position ``j``."""
    w = s.sorted_weights
    total = w[j] * s.base.follower_budgets[k]
    for p in s.follower_positions[k]:
        if p > j and not x[s.order[p]]:
            total += w[p] - w[j]
    return total


def dual_breakdown(
    instance: Instance | SortedInstance, x: Sequence[int]
) -> list[tuple[int, int]]:
    """Per follower group, the minimal dual value and the first ``j`` attaining it."""
    s = _sorted(instance)
    x = as_decision(x, s.n)
    w = s.sorted_weights
    order = s.order
    out = []
    for k, f in enumerate(s.base.follower_budgets):
        # Sweep j from n down to 0, keeping the count and weight sum of
        # unblocked group members strictly above j.
        members = set(s.follower_positions[k])
        above = total = 0
        best = None
        for j in range(s.n, -1, -1):
            value = w[j] * (f - above) + total
            if best is None or value <= best[0]:
                best = (value, j)
            if j in members and not x[order[j]]:
                above += 1
                total += w[j]
        out.append(best)
    return out


def dual_inner_value(instance: Instance | SortedInstance, x: Sequence[int]) -> int:
    """Follower value of ``x`` computed through the dual; equals ``psi``."""
    return sum(v for v, _ in dual_breakdown(instance, x))


def breakpoint_candidates(s: SortedInstance, dedupe: bool = False) -> list[int]:
    """Positions ``j`` to try for each group.

    With ``dedupe`` only the first position of every distinct weight value
    is kept; positions sharing a weight give identical dual expressions.
    """
    if not dedupe:
        return list(range(s.n + 1))
    w = s.sorted_weights
    return [j for j in range(s.n + 1) if j == 0 or w[j] != w[j - 1]]


def breakpoint_gains(s: SortedInstance, j: Sequence[int]) -> tuple[list[int], int]:
    """Leader gains (original indexing) and constant term for breakpoint vector ``j``.

    The inner objective is ``constant - sum(gains[i] * x[i])``.
    """
    w = s.sorted_weights
    gains = [0] * s.n
    constant = 0
    for k, (positions, f) in enumerate(zip(s.follower_positions, s.base.follower_budgets)):
        wj = w[j[k]]
        constant += wj * f
        for p in positions:
            if p > j[k]:
                g = w[p] - wj
                gains[s.order[p]] = g
                constant += g
    return gains, constant


def _scan(s: SortedInstance, matroid: LeaderMatroid, j_vectors):
    best = None
    visits = 0
    count = 0
    for j in j_vectors:
        count += 1
        gains, constant = breakpoint_gains(s, j)
        x, gained = max_weight_independent_set(gains, matroid)
        visits += s.n + sum(1 for g in gains if g > 0)
        value = constant - gained
        if best is None or value < best[0]:
            best = (value, tuple(j), x)
    return best, visits, count


def _scan_block(args):
    s, matroid, first_values, rest, k_f = args
    j_iter = (
        (a, *tail)
        for a in first_values
        for tail in itertools.product(rest, repeat=k_f - 1)
    )
    return _scan(s, matroid, j_iter)


def solve_dual(
    instance: Instance | SortedInstance,
    matroid: LeaderMatroid | None = None,
    budget: int = DUAL_ENUMERATION_BUDGET,
    dedupe: bool = False,
    threads: int = 1,
) -> SolveResult:
    """Exact solve by enumerating breakpoint vectors ``j`` in row-major order.

    The first ``(j, x)`` pair reaching the minimum wins.  ``threads > 1``
    splits the enumeration on ``j_1`` across processes; abstract
    independence testers always run sequentially.
    """
    s = _sorted(instance)
    if matroid is None:
        matroid = LeaderMatroid.from_instance(s)
    k_f = s.base.k_f
    cands = breakpoint_candidates(s, dedupe)
    total = len(cands) ** k_f
    if total > budget:
        raise EnumerationBudgetExceeded(
            f"{total} breakpoint vectors exceed the budget of {budget}"
        )

    if threads > 1 and matroid.is_partition and len(cands) > 1:
        size = -(-len(cands) // threads)
        chunks = [cands[i:i + size] for i in range(0, len(cands), size)]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(_scan_block, [(s, matroid, c, cands, k_f) for c in chunks]))
        best = None
        visits = count = 0
        for part_best, part_visits, part_count in parts:
            visits += part_visits
            count += part_count
            if part_best is not None and (best is None or part_best[0] < best[0]):
                best = part_best
    else:
        best, visits, count = _scan(s, matroid, itertools.product(cands, repeat=k_f))

    value, j_best, x_best = best
    result = make_result(
        s,
        x_best,
        "dual",
        breakpoints=j_best,
        stats={"breakpoint_vectors": count, "element_visits": visits},
    )
    if result.objective != value:
        raise AssertionError(
            f"dual value {value} disagrees with psi(x*) = {result.objective}"
        )
    return result
