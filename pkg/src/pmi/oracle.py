"""Brute-force ground truth.

``solve_oracle_full`` enumerates both players' decisions and never calls
the follower best response, so it does not depend on the uniform-matroid
optimality argument used everywhere else.  ``solve_oracle_leader``
enumerates only the leader and evaluates the follower exactly.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

import numpy as np

from pmi.errors import GraphError, TooLarge
from pmi.matroid import LeaderMatroid
from pmi.model import (
    FollowerResponse,
    Instance,
    SolveResult,
    SortedInstance,
    make_result,
    psi,
)

FULL_ORACLE_CAP = 16
LEADER_ORACLE_CAP = 10**7
MIS_CAP = 20

_CHUNK = 256


def _base(instance: Instance | SortedInstance) -> Instance:
    return instance.base if isinstance(instance, SortedInstance) else instance


def _bit_table(n: int) -> np.ndarray:
    masks = np.arange(1 << n, dtype=np.int64)
    return (masks[:, None] >> np.arange(n, dtype=np.int64)) & 1


def _mask_to_tuple(mask: int, n: int) -> tuple[int, ...]:
    return tuple((mask >> i) & 1 for i in range(n))


def solve_oracle_full(instance: Instance | SortedInstance, cap: int = FULL_ORACLE_CAP) -> SolveResult:
    """Exhaustive min-max over all leader and follower 0/1 vectors.

    Ties between optimal blocking decisions go to the lexicographically
    smallest ``x``.
    """
    inst = _base(instance)
    n = inst.n
    if n > cap:
        raise TooLarge(f"n={n} exceeds the full-oracle cap of {cap}")
    bits = _bit_table(n)
    masks = np.arange(1 << n, dtype=np.int64)
    weights = np.array(inst.scaled_weights, dtype=np.int64)

    ok_y = np.ones(1 << n, dtype=bool)
    for group, f in zip(inst.follower_groups, inst.follower_budgets):
        if group:
            ok_y &= bits[:, list(group)].sum(axis=1) <= f
    y_masks = masks[ok_y]
    y_values = bits[ok_y] @ weights

    ok_x = np.ones(1 << n, dtype=bool)
    for group, l in zip(inst.leader_groups, inst.leader_budgets):
        if group:
            ok_x &= bits[:, list(group)].sum(axis=1) <= l
    x_masks = masks[ok_x]

    best_val = None
    best_pairs: list[tuple[int, int]] = []
    for start in range(0, len(x_masks), _CHUNK):
        xs = x_masks[start:start + _CHUNK]
        allowed = (xs[:, None] & y_masks[None, :]) == 0
        scored = np.where(allowed, y_values[None, :], -1)
        arg = scored.argmax(axis=1)
        vals = scored[np.arange(len(xs)), arg]
        for xm, v, a in zip(xs.tolist(), vals.tolist(), arg.tolist()):
            if best_val is None or v < best_val:
                best_val = v
                best_pairs = [(xm, a)]
            elif v == best_val:
                best_pairs.append((xm, a))

    x_mask, y_idx = min(best_pairs, key=lambda pair: _mask_to_tuple(pair[0], n))
    y = _mask_to_tuple(int(y_masks[y_idx]), n)
    return SolveResult(
        objective=int(best_val),
        x_opt=_mask_to_tuple(x_mask, n),
        response=FollowerResponse(y, int(best_val)),
        solver="oracle-full",
        scale=inst.scale,
        stats={"leader_decisions": len(x_masks), "follower_decisions": len(y_masks)},
    )


def count_leader_decisions(instance: Instance) -> int:
    total = 1
    for group, l in zip(instance.leader_groups, instance.leader_budgets):
        total *= sum(math.comb(len(group), s) for s in range(l + 1))
    return total


def iter_leader_decisions(instance: Instance):
    """Every feasible leader decision, composed group by group."""
    n = instance.n
    per_group = [
        [c for s in range(l + 1) for c in itertools.combinations(group, s)]
        for group, l in zip(instance.leader_groups, instance.leader_budgets)
    ]
    for parts in itertools.product(*per_group):
        x = [0] * n
        for part in parts:
            for i in part:
                x[i] = 1
        yield tuple(x)


def solve_oracle_leader(
    instance: Instance | SortedInstance,
    matroid: LeaderMatroid | None = None,
    cap: int = LEADER_ORACLE_CAP,
) -> SolveResult:
    """Enumerate leader decisions and evaluate the follower exactly.

    With an abstract ``matroid`` every 0/1 vector is tested for
    independence, so the cap applies to ``2**n``.
    """
    inst = _base(instance)
    s = inst.sorted_view
    n = inst.n
    if matroid is None or matroid.is_partition:
        if matroid is not None:
            groups: dict[int, list[int]] = {}
            for i, k in enumerate(matroid.owner):
                groups.setdefault(k, []).append(i)
            inst_for_enum = Instance(
                n=n,
                weights=inst.weights,
                leader_groups=tuple(tuple(groups.get(k, ())) for k in range(len(matroid.budgets))),
                leader_budgets=tuple(
                    min(b, len(groups.get(k, ()))) for k, b in enumerate(matroid.budgets)
                ),
                follower_groups=inst.follower_groups,
                follower_budgets=inst.follower_budgets,
            )
        else:
            inst_for_enum = inst
        count = count_leader_decisions(inst_for_enum)
        if count > cap:
            raise TooLarge(f"{count} leader decisions exceed the cap of {cap}")
        candidates = iter_leader_decisions(inst_for_enum)
    else:
        count = 1 << n
        if count > cap:
            raise TooLarge(f"2**{n} candidate decisions exceed the cap of {cap}")
        candidates = (
            x for x in itertools.product((0, 1), repeat=n) if matroid.is_independent(x)
        )

    best_val = None
    best_x = None
    for x in candidates:
        v = psi(s, x)
        if best_val is None or v < best_val or (v == best_val and x < best_x):
            best_val, best_x = v, x
    return make_result(s, best_x, "oracle-leader", stats={"leader_decisions": count})


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph; edges are canonical ``(u, v)`` with ``u < v``."""

    num_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        if self.num_vertices < 0:
            raise GraphError("negative vertex count")
        seen = set()
        for u, v in self.edges:
            if not (0 <= u < self.num_vertices and 0 <= v < self.num_vertices):
                raise GraphError(f"edge ({u}, {v}) has an endpoint out of range")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            if u > v:
                raise GraphError(f"edge ({u}, {v}) is not canonical; use Graph.from_edges")
            if (u, v) in seen:
                raise GraphError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))

    @classmethod
    def from_edges(cls, num_vertices: int, edges) -> Graph:
        """Build a graph, canonicalizing endpoint order but keeping edge order."""
        canon = []
        for u, v in edges:
            u, v = int(u), int(v)
            canon.append((min(u, v), max(u, v)) if u != v else (u, v))
        return cls(num_vertices, tuple(canon))

    @property
    def num_edges(self) -> int:
        return len(self.edges)


def is_independent_set(graph: Graph, vertices) -> bool:
    chosen = set(vertices)
    return not any(u in chosen and v in chosen for u, v in graph.edges)


def mis_brute_force(graph: Graph, cap: int = MIS_CAP) -> tuple[int, tuple[int, ...]]:
    """Maximum independent set size and the first witness in combination order."""
    nv = graph.num_vertices
    if nv > cap:
        raise TooLarge(f"{nv} vertices exceed the MIS cap of {cap}")
    adj = [0] * nv
    for u, v in graph.edges:
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    for size in range(nv, 0, -1):
        for combo in itertools.combinations(range(nv), size):
            mask = 0
            for v in combo:
                mask |= 1 << v
            if all(not (adj[v] & mask) for v in combo):
                return size, combo
    return 0, ()
