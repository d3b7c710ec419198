"""Problem data, weight sorting and the follower's exact best response.

Elements are identified ``0..n-1`` in the order the user supplied them.
Every solver works on :class:`SortedInstance`, a weight-sorted view with
1-based sorted positions and a zero-weight sentinel at position 0.  All
weights are scaled to exact integers, so objective values are integers
measured in units of ``1/scale``.
"""

from __future__ import annotations

import math
from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field
from decimal import Decimal
from fractions import Fraction
from functools import cached_property
from typing import Any

from pmi.errors import (
    AlreadyBlocked,
    DimensionMismatch,
    EmptyGroundSet,
    IndexOutOfRange,
    InvalidBudget,
    MalformedWeight,
    NegativeWeight,
    NonPartition,
    ScaleOverflow,
    SchemaError,
)

#: Scaled weights and every sum built from them must stay below this bound.
INT63_LIMIT = 2**63

BlockingDecision = tuple[int, ...]


def parse_weight(value: Any) -> Fraction:
    """Convert a user-supplied weight to an exact nonnegative rational.

    Strings are parsed exactly (``"1.25"``, ``"5/4"``).  Floats go through
    their shortest decimal repr, so ``0.1`` becomes ``1/10``.
    """
    if isinstance(value, bool):
        raise MalformedWeight(f"boolean is not a weight: {value!r}")
    if isinstance(value, (int, Fraction)):
        w = Fraction(value)
    elif isinstance(value, Decimal):
        if not value.is_finite():
            raise MalformedWeight(f"non-finite weight {value!r}")
        w = Fraction(value)
    elif isinstance(value, float):
        if not math.isfinite(value):
            raise MalformedWeight(f"non-finite weight {value!r}")
        w = Fraction(repr(value))
    elif isinstance(value, str):
        try:
            w = Fraction(value.strip())
        except (ValueError, ZeroDivisionError):
            raise MalformedWeight(f"not a rational number: {value!r}") from None
    else:
        raise MalformedWeight(f"unsupported weight type {type(value).__name__}")
    if w < 0:
        raise NegativeWeight(f"weight {value!r} is negative")
    return w


@dataclass(frozen=True)
class Instance:
    """A validated PMI instance.

    ``leader_groups``/``follower_groups`` are exact partitions of
    ``range(n)``; each group is a sorted tuple of element ids.  Budgets are
    already clamped to their group sizes.
    """

    n: int
    weights: tuple[Fraction, ...]
    leader_groups: tuple[tuple[int, ...], ...]
    leader_budgets: tuple[int, ...]
    follower_groups: tuple[tuple[int, ...], ...]
    follower_budgets: tuple[int, ...]
    meta: Mapping[str, Any] = field(default_factory=dict, hash=False, compare=False)

    @property
    def k_l(self) -> int:
        return len(self.leader_groups)

    @property
    def k_f(self) -> int:
        return len(self.follower_groups)

    @cached_property
    def scale(self) -> int:
        return math.lcm(1, *(w.denominator for w in self.weights))

    @cached_property
    def scaled_weights(self) -> tuple[int, ...]:
        s = self.scale
        return tuple(int(w * s) for w in self.weights)

    @cached_property
    def leader_of(self) -> tuple[int, ...]:
        return _group_index(self.n, self.leader_groups)

    @cached_property
    def follower_of(self) -> tuple[int, ...]:
        return _group_index(self.n, self.follower_groups)

    @cached_property
    def sorted_view(self) -> SortedInstance:
        return sort_weights(self)

    def distinct_weights(self) -> bool:
        return len(set(self.weights)) == self.n

    def is_feasible(self, x: Sequence[int]) -> bool:
        """Leader feasibility: at most ``l_k`` blocked elements per group."""
        x = as_decision(x, self.n)
        return all(
            sum(x[i] for i in group) <= budget
            for group, budget in zip(self.leader_groups, self.leader_budgets)
        )


def _group_index(n: int, groups: Sequence[Sequence[int]]) -> tuple[int, ...]:
    owner = [0] * n
    for k, group in enumerate(groups):
        for i in group:
            owner[i] = k
    return tuple(owner)


def _check_partition(n: int, groups: Any, side: str) -> tuple[tuple[int, ...], ...]:
    if not isinstance(groups, Sequence) or isinstance(groups, (str, bytes)):
        raise SchemaError("expected a list of groups", f"{side}.groups")
    seen: dict[int, int] = {}
    out = []
    for k, group in enumerate(groups):
        if not isinstance(group, (Sequence, set, frozenset)) or isinstance(group, (str, bytes)):
            raise SchemaError(f"group {k} is not a list of element ids", f"{side}.groups")
        members = []
        for i in group:
            if isinstance(i, bool) or not isinstance(i, int):
                raise SchemaError(f"element id {i!r} is not an integer", f"{side}.groups")
            if not 0 <= i < n:
                raise NonPartition(f"{side} group {k}: element {i} is outside 0..{n - 1}", i, side)
            if i in seen:
                raise NonPartition(
                    f"{side} groups {seen[i]} and {k} both contain element {i}", i, side
                )
            seen[i] = k
            members.append(i)
        out.append(tuple(sorted(members)))
    if len(seen) != n:
        missing = min(set(range(n)) - set(seen))
        raise NonPartition(f"{side} groups do not cover element {missing}", missing, side)
    return tuple(out)


def _check_budgets(budgets: Any, groups: tuple[tuple[int, ...], ...], side: str) -> tuple[int, ...]:
    if not isinstance(budgets, Sequence) or isinstance(budgets, (str, bytes)):
        raise SchemaError("expected a list of budgets", f"{side}.budgets")
    if len(budgets) != len(groups):
        raise DimensionMismatch(
            f"{side}: {len(budgets)} budgets for {len(groups)} groups"
        )
    out = []
    for k, (b, group) in enumerate(zip(budgets, groups)):
        if isinstance(b, bool) or not isinstance(b, int):
            raise InvalidBudget(f"{side} budget {k} is not an integer: {b!r}")
        if b < 0:
            raise InvalidBudget(f"{side} budget {k} is negative: {b}")
        out.append(min(b, len(group)))
    return tuple(out)


def validate_instance(raw: Mapping[str, Any] | Instance) -> Instance:
    """Validate and normalize raw instance data.

    ``raw`` has the same shape as the JSON file format::

        {"n": 5, "weights": [...],
         "leader": {"groups": [[...], ...], "budgets": [...]},
         "follower": {"groups": [[...], ...], "budgets": [...]},
         "meta": {...}}
    """
    if isinstance(raw, Instance):
        return raw
    if not isinstance(raw, Mapping):
        raise SchemaError("instance must be a mapping", "<root>")

    weights_raw = raw.get("weights")
    if weights_raw is None:
        raise SchemaError("missing", "weights")
    if not isinstance(weights_raw, Sequence) or isinstance(weights_raw, (str, bytes)):
        raise SchemaError("expected a list", "weights")
    n = raw.get("n", len(weights_raw))
    if isinstance(n, bool) or not isinstance(n, int):
        raise SchemaError("expected an integer", "n")
    if n <= 0:
        raise EmptyGroundSet("the ground set must contain at least one element")
    if len(weights_raw) != n:
        raise DimensionMismatch(f"n={n} but {len(weights_raw)} weights given")
    weights = tuple(parse_weight(w) for w in weights_raw)

    sides = {}
    for side in ("leader", "follower"):
        block = raw.get(side)
        if not isinstance(block, Mapping):
            raise SchemaError("expected an object with groups and budgets", side)
        groups = _check_partition(n, block.get("groups"), side)
        budgets = _check_budgets(block.get("budgets"), groups, side)
        sides[side] = (groups, budgets)

    meta = raw.get("meta") or {}
    if not isinstance(meta, Mapping):
        raise SchemaError("expected an object", "meta")
    instance = Instance(
        n=n,
        weights=weights,
        leader_groups=sides["leader"][0],
        leader_budgets=sides["leader"][1],
        follower_groups=sides["follower"][0],
        follower_budgets=sides["follower"][1],
        meta=dict(meta),
    )
    check_scale(instance)
    return instance


def check_scale(instance: Instance) -> None:
    """Raise ScaleOverflow unless scaled weights and their sums fit in 63 bits."""
    scaled = instance.scaled_weights
    if 2 * instance.n * max(scaled) >= INT63_LIMIT or sum(scaled) >= INT63_LIMIT:
        raise ScaleOverflow(f"scale {instance.scale} pushes weight sums past 63 bits")


def make_instance(
    weights: Sequence[Any],
    leader_groups: Sequence[Sequence[int]],
    leader_budgets: Sequence[int],
    follower_groups: Sequence[Sequence[int]],
    follower_budgets: Sequence[int],
    meta: Mapping[str, Any] | None = None,
) -> Instance:
    return validate_instance(
        {
            "n": len(weights),
            "weights": list(weights),
            "leader": {"groups": [list(g) for g in leader_groups], "budgets": list(leader_budgets)},
            "follower": {
                "groups": [list(g) for g in follower_groups],
                "budgets": list(follower_budgets),
            },
            "meta": dict(meta or {}),
        }
    )


@dataclass(frozen=True)
class SortedInstance:
    """Weight-sorted view of an :class:`Instance`.

    ``order[p]`` is the original element at sorted position ``p`` for
    ``p = 1..n``; ``order[0]`` is ``-1`` (the sentinel).  ``sorted_weights``
    holds the scaled integer weights by position with ``sorted_weights[0] == 0``.
    """

    base: Instance
    order: tuple[int, ...]
    sorted_weights: tuple[int, ...]
    scale: int

    @property
    def n(self) -> int:
        return self.base.n

    @cached_property
    def position(self) -> tuple[int, ...]:
        """Sorted position of every original element."""
        pos = [0] * self.n
        for p in range(1, self.n + 1):
            pos[self.order[p]] = p
        return tuple(pos)

    @cached_property
    def follower_positions(self) -> tuple[tuple[int, ...], ...]:
        """Sorted positions of each follower group, ascending."""
        return tuple(
            tuple(sorted(self.position[i] for i in g)) for g in self.base.follower_groups
        )

    @cached_property
    def follower_of_position(self) -> tuple[int, ...]:
        owner = [-1] * (self.n + 1)
        for k, positions in enumerate(self.follower_positions):
            for p in positions:
                owner[p] = k
        return tuple(owner)

    @cached_property
    def leader_of_position(self) -> tuple[int, ...]:
        return (-1,) + tuple(self.base.leader_of[self.order[p]] for p in range(1, self.n + 1))


def sort_weights(instance: Instance) -> SortedInstance:
    """Stable ascending sort of the scaled weights with a zero sentinel."""
    check_scale(instance)
    scaled = instance.scaled_weights
    n = instance.n
    order = sorted(range(n), key=lambda i: (scaled[i], i))
    return SortedInstance(
        base=instance,
        order=(-1, *order),
        sorted_weights=(0, *(scaled[i] for i in order)),
        scale=instance.scale,
    )


def _as_sorted(instance: Instance | SortedInstance) -> SortedInstance:
    if isinstance(instance, SortedInstance):
        return instance
    return instance.sorted_view


def as_decision(x: Sequence[int] | Any, n: int) -> BlockingDecision:
    """Coerce ``x`` to a 0/1 tuple of length ``n``."""
    x = tuple(int(v) for v in x)
    if len(x) != n:
        raise DimensionMismatch(f"decision has length {len(x)}, expected {n}")
    if any(v not in (0, 1) for v in x):
        raise ValueError(f"decision is not binary: {x}")
    return x


@dataclass(frozen=True)
class FollowerResponse:
    y: tuple[int, ...]
    value: int


def follower_best_response(
    instance: Instance | SortedInstance, x: Sequence[int]
) -> FollowerResponse:
    """The follower's optimal selection once the leader has blocked ``x``.

    Each follower group is a uniform matroid, so taking the ``f_k``
    heaviest unblocked elements of every group is optimal.  ``x`` need not
    be leader-feasible.
    """
    s = _as_sorted(instance)
    x = as_decision(x, s.n)
    w = s.sorted_weights
    y = [0] * s.n
    value = 0
    for positions, f in zip(s.follower_positions, s.base.follower_budgets):
        taken = 0
        for p in reversed(positions):
            if taken == f:
                break
            i = s.order[p]
            if x[i]:
                continue
            y[i] = 1
            value += w[p]
            taken += 1
    return FollowerResponse(tuple(y), value)


def psi(instance: Instance | SortedInstance, x: Sequence[int]) -> int:
    """Follower's optimal value for blocking decision ``x`` (scaled)."""
    return follower_best_response(instance, x).value


def group_thresholds(
    s: SortedInstance, x: Sequence[int], k: int
) -> tuple[int, int]:
    """Positions of the ``f_k``-th and ``(f_k+1)``-th unblocked elements of
    follower group ``k``, counted from the heaviest; 0 when absent."""
    f = s.base.follower_budgets[k]
    found = 0
    j_f = j_f1 = 0
    for p in reversed(s.follower_positions[k]):
        if x[s.order[p]]:
            continue
        found += 1
        if found == f:
            j_f = p
        elif found == f + 1:
            j_f1 = p
            break
    return j_f, j_f1


def marginal_from_thresholds(
    s: SortedInstance, p: int, f: int, j_f: int, j_f1: int
) -> int:
    """Closed-form ``psi(x + e_i) - psi(x)`` for an unblocked element at
    sorted position ``p`` whose group has budget ``f``."""
    if f == 0 or p < j_f:
        return 0
    return s.sorted_weights[j_f1] - s.sorted_weights[p]


def marginal_decrease(
    instance: Instance | SortedInstance, x: Sequence[int], i: int
) -> int:
    """Change in ``psi`` from additionally blocking element ``i``.

    Runs in ``O(|F_k|)`` without re-solving the follower problem.
    """
    s = _as_sorted(instance)
    x = as_decision(x, s.n)
    if not 0 <= i < s.n:
        raise IndexOutOfRange(f"element {i} outside 0..{s.n - 1}")
    if x[i]:
        raise AlreadyBlocked(f"element {i} is already blocked")
    k = s.base.follower_of[i]
    f = s.base.follower_budgets[k]
    j_f, j_f1 = group_thresholds(s, x, k)
    return marginal_from_thresholds(s, s.position[i], f, j_f, j_f1)


@dataclass
class SolveResult:
    """Outcome of one solver run.

    ``objective`` is in scaled integer units; :attr:`value` gives the exact
    rational.  ``exact`` is only set by the greedy solver.
    """

    objective: int
    x_opt: BlockingDecision
    response: FollowerResponse
    solver: str
    scale: int = 1
    exact: bool | None = None
    breakpoints: tuple[int, ...] | None = None
    stats: dict[str, int] = field(default_factory=dict)
    trace: list[Any] = field(default_factory=list)

    @property
    def value(self) -> Fraction:
        return Fraction(self.objective, self.scale)

    def to_dict(self) -> dict[str, Any]:
        out: dict[str, Any] = {
            "solver": self.solver,
            "objective": self.objective,
            "scale": self.scale,
            "value": str(self.value),
            "x_opt": list(self.x_opt),
            "y": list(self.response.y),
        }
        if self.exact is not None:
            out["exact"] = self.exact
        if self.breakpoints is not None:
            out["breakpoints"] = list(self.breakpoints)
        if self.stats:
            out["stats"] = dict(self.stats)
        return out


def make_result(
    instance: Instance | SortedInstance, x: Sequence[int], solver: str, **extra: Any
) -> SolveResult:
    s = _as_sorted(instance)
    x = as_decision(x, s.n)
    response = follower_best_response(s, x)
    return SolveResult(
        objective=response.value, x_opt=x, response=response, solver=solver, scale=s.scale, **extra
    )
