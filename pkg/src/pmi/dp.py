"""Backward dynamic program over the leader's residual budgets.

Stages are follower groups.  A state is the vector of residual leader
budgets; an action is a count vector ``c`` saying how many elements of
``F_k ∩ L_k'`` to block.  Blocking the ``c_k'`` heaviest elements of each
intersection is lossless (swap argument), so actions never need to name
individual elements.
"""

from __future__ import annotations

import itertools
import math
from typing import Sequence

from pmi.errors import BudgetUnderflow, InvalidAction, MemoryBudgetExceeded
from pmi.model import Instance, SolveResult, SortedInstance, make_result

#: Default cap on the number of value-table cells (states times stages).
DP_MEMORY_BUDGET = 10**7


def _sorted(instance: Instance | SortedInstance) -> SortedInstance:
    return instance if isinstance(instance, SortedInstance) else instance.sorted_view


def intersections(s: SortedInstance, k: int) -> list[list[int]]:
    """Sorted positions of ``F_k ∩ L_k'`` for every leader group, heaviest first."""
    out: list[list[int]] = [[] for _ in range(s.base.k_l)]
    for p in reversed(s.follower_positions[k]):
        out[s.leader_of_position[p]].append(p)
    return out


def stage_psi(instance: Instance | SortedInstance, k: int, action: Sequence[int]) -> int:
    """Follower value inside ``F_k`` after blocking the prefixes named by ``action``."""
    s = _sorted(instance)
    inter = intersections(s, k)
    if len(action) != len(inter):
        raise InvalidAction(f"action has {len(action)} counts, expected {len(inter)}")
    for c, members in zip(action, inter):
        if not 0 <= c <= len(members):
            raise InvalidAction(f"count {c} outside 0..{len(members)}")
    return _stage_value(s, k, inter, action)


def _stage_value(s: SortedInstance, k: int, inter: list[list[int]], action: Sequence[int]) -> int:
    blocked = set()
    for c, members in zip(action, inter):
        blocked.update(members[:c])
    f = s.base.follower_budgets[k]
    w = s.sorted_weights
    total = taken = 0
    for p in reversed(s.follower_positions[k]):
        if taken == f:
            break
        if p not in blocked:
            total += w[p]
            taken += 1
    return total


def transition(state: Sequence[int], action: Sequence[int]) -> tuple[int, ...]:
    """Residual budgets after spending ``action``."""
    if len(state) != len(action):
        raise InvalidAction("state and action lengths differ")
    nxt = tuple(r - c for r, c in zip(state, action))
    if min(nxt, default=0) < 0:
        raise BudgetUnderflow(f"action {tuple(action)} exceeds residual budgets {tuple(state)}")
    return nxt


class _Radix:
    """Mixed-radix encoding of states ``r`` with ``0 <= r_k' <= l_k'``."""

    def __init__(self, limits: Sequence[int]):
        self.limits = tuple(limits)
        self.size = math.prod(l + 1 for l in limits)
        strides = []
        acc = 1
        for l in reversed(self.limits):
            strides.append(acc)
            acc *= l + 1
        self.strides = tuple(reversed(strides))

    def encode(self, r: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(r, self.strides))

    def states(self):
        return itertools.product(*(range(l + 1) for l in self.limits))


def solve_dp(
    instance: Instance | SortedInstance, memory_budget: int = DP_MEMORY_BUDGET
) -> SolveResult:
    """Exact solve by backward induction over follower groups.

    Among equal-value actions the lexicographically smallest count vector
    wins.  ``stats`` reports how many (state, action) pairs were evaluated.
    """
    s = _sorted(instance)
    inst = s.base
    k_f = inst.k_f
    radix = _Radix(inst.leader_budgets)
    if radix.size * k_f > memory_budget:
        raise MemoryBudgetExceeded(
            f"{radix.size} states x {k_f} stages exceed the budget of {memory_budget}"
        )

    inters = [intersections(s, k) for k in range(k_f)]
    strides = radix.strides
    argmin: list[list[tuple[int, ...]]] = [None] * k_f  # type: ignore[list-item]
    nxt_values: list[int] | None = None
    pairs = 0
    for k in range(k_f - 1, -1, -1):
        sizes = [len(m) for m in inters[k]]
        caps = [min(l, sz) for l, sz in zip(inst.leader_budgets, sizes)]
        psi_table = {
            c: _stage_value(s, k, inters[k], c)
            for c in itertools.product(*(range(cap + 1) for cap in caps))
        }
        values = [0] * radix.size
        choice: list[tuple[int, ...]] = [()] * radix.size
        for r in radix.states():
            idx = radix.encode(r)
            best_val = None
            best_c = None
            for c in itertools.product(*(range(min(rk, sz) + 1) for rk, sz in zip(r, sizes))):
                pairs += 1
                val = psi_table[c]
                if nxt_values is not None:
                    val += nxt_values[idx - sum(a * b for a, b in zip(c, strides))]
                if best_val is None or val < best_val:
                    best_val, best_c = val, c
            values[idx] = best_val
            choice[idx] = best_c
        argmin[k] = choice
        nxt_values = values

    r = tuple(inst.leader_budgets)
    x = [0] * inst.n
    path = []
    for k in range(k_f):
        c = argmin[k][radix.encode(r)]
        path.append(c)
        for count, members in zip(c, inters[k]):
            for p in members[:count]:
                x[s.order[p]] = 1
        r = transition(r, c)

    objective = nxt_values[radix.encode(inst.leader_budgets)]
    result = make_result(
        s,
        x,
        "dp",
        stats={"state_action_pairs": pairs, "states": radix.size * k_f},
        trace=path,
    )
    if result.objective != objective:
        raise AssertionError(f"dp value {objective} disagrees with psi(x*) = {result.objective}")
    return result


def pair_count_bound(instance: Instance) -> int:
    """Upper bound on prefix (state, action) pairs, summed over stages.

    Per stage this is ``prod((l + 2) * (l + 1) // 2)`` over leader budgets,
    the count obtained when no intersection is smaller than its budget.
    """
    per_stage = math.prod((l + 2) * (l + 1) // 2 for l in instance.leader_budgets)
    return per_stage * instance.k_f


def exact_pair_count(instance: Instance | SortedInstance) -> int:
    """Number of prefix actions summed over all states and stages."""
    s = _sorted(instance)
    total = 0
    for k in range(s.base.k_f):
        sizes = [len(m) for m in intersections(s, k)]
        stage = 1
        for l, sz in zip(s.base.leader_budgets, sizes):
            stage *= sum(min(r, sz) + 1 for r in range(l + 1))
        total += stage
    return total
