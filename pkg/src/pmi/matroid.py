"""Leader matroids and the greedy maximum-weight independent set."""

from __future__ import annotations

from collections.abc import Callable, Sequence

from pmi.model import BlockingDecision, Instance, SortedInstance


class LeaderMatroid:
    """Independence structure over the leader's decisions.

    Either a partition matroid (groups with capacities, O(1) incremental
    test via per-group counters) or an abstract tester ``is_independent(x)``
    taking a 0/1 tuple.  The tester must describe a matroid; this is not
    checked here.
    """

    def __init__(
        self,
        n: int,
        groups: Sequence[Sequence[int]] | None = None,
        budgets: Sequence[int] | None = None,
        tester: Callable[[BlockingDecision], bool] | None = None,
    ):
        if (groups is None) == (tester is None):
            raise ValueError("give either groups+budgets or a tester")
        self.n = n
        self.tester = tester
        if groups is not None:
            if budgets is None or len(budgets) != len(groups):
                raise ValueError("one budget per group is required")
            owner = [-1] * n
            for k, g in enumerate(groups):
                for i in g:
                    owner[i] = k
            if min(owner, default=0) < 0:
                raise ValueError("groups must cover every element")
            self.owner = tuple(owner)
            self.budgets = tuple(budgets)
        else:
            self.owner = None
            self.budgets = None

    @classmethod
    def from_instance(cls, instance: Instance | SortedInstance) -> LeaderMatroid:
        base = instance.base if isinstance(instance, SortedInstance) else instance
        return cls(base.n, base.leader_groups, base.leader_budgets)

    @classmethod
    def from_tester(cls, n: int, tester: Callable[[BlockingDecision], bool]) -> LeaderMatroid:
        return cls(n, tester=tester)

    @property
    def is_partition(self) -> bool:
        return self.tester is None

    def is_independent(self, x: Sequence[int]) -> bool:
        if self.tester is not None:
            return bool(self.tester(tuple(x)))
        counts = [0] * len(self.budgets)
        for i, v in enumerate(x):
            if v:
                counts[self.owner[i]] += 1
        return all(c <= b for c, b in zip(counts, self.budgets))

    def as_tester(self) -> LeaderMatroid:
        """The same matroid behind the abstract-tester pathway."""
        if self.tester is not None:
            return self
        return LeaderMatroid(self.n, tester=self.is_independent)


def max_weight_independent_set(
    gains: Sequence[int], matroid: LeaderMatroid
) -> tuple[BlockingDecision, int]:
    """Greedy maximum-weight independent set for nonnegative ``gains``.

    Scans elements by non-increasing gain (ties: lower index first) and
    keeps each one that preserves independence.  Zero-gain elements are
    skipped.
    """
    n = matroid.n
    if len(gains) != n:
        raise ValueError(f"{len(gains)} gains for a matroid on {n} elements")
    candidates = sorted((i for i in range(n) if gains[i] > 0), key=lambda i: (-gains[i], i))
    x = [0] * n
    total = 0
    if matroid.is_partition:
        room = list(matroid.budgets)
        owner = matroid.owner
        for i in candidates:
            k = owner[i]
            if room[k] > 0:
                room[k] -= 1
                x[i] = 1
                total += gains[i]
    else:
        for i in candidates:
            x[i] = 1
            if matroid.is_independent(x):
                total += gains[i]
            else:
                x[i] = 0
    return tuple(x), total
