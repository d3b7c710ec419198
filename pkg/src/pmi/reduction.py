"""Instance builders: the independent-set reduction and seeded random instances."""

from __future__ import annotations

import random
from typing import Iterable

from pmi.errors import EdgelessGraph, InfeasibleParams, QOutOfRange
from pmi.model import BlockingDecision, Instance, make_instance
from pmi.oracle import Graph


def element_index(v: int, e: int, num_edges: int) -> int:
    """Ground-set index of the (vertex, edge) pair, vertex-major."""
    return v * num_edges + e


def decode_element(index: int, num_edges: int) -> tuple[int, int]:
    return divmod(index, num_edges)


def reduce_mis(graph: Graph, q: int) -> tuple[Instance, int]:
    """Map the question "does G have an independent set of size >= q" to a
    PMI threshold question.

    The ground set is V x E; leader group ``e`` holds ``{(v, e)}`` and
    follower group ``v`` holds ``{(v, e)}``, every budget is 1 and the
    weights are the vertex-edge incidence matrix.  Returns the instance and
    the threshold ``|V| - q``: G has such a set iff the PMI optimum is at
    most the threshold.
    """
    nv, ne = graph.num_vertices, graph.num_edges
    if ne == 0:
        raise EdgelessGraph("the reduction needs at least one edge")
    if not 0 <= q <= nv:
        raise QOutOfRange(f"q={q} outside 0..{nv}")
    weights = [0] * (nv * ne)
    for e, (u, v) in enumerate(graph.edges):
        weights[element_index(u, e, ne)] = 1
        weights[element_index(v, e, ne)] = 1
    inst = make_instance(
        weights=weights,
        leader_groups=[[element_index(v, e, ne) for v in range(nv)] for e in range(ne)],
        leader_budgets=[1] * ne,
        follower_groups=[[element_index(v, e, ne) for e in range(ne)] for v in range(nv)],
        follower_budgets=[1] * nv,
        meta={
            "generator": "mis-reduction",
            "layout": "vertex-major",
            "vertices": nv,
            "edges": [list(edge) for edge in graph.edges],
            "q": q,
            "threshold": nv - q,
            "distinct_weights": False,
        },
    )
    return inst, nv - q


def blocking_from_independent_set(graph: Graph, vertices: Iterable[int]) -> BlockingDecision:
    """Block every incidence entry of the chosen vertices."""
    ne = graph.num_edges
    x = [0] * (graph.num_vertices * ne)
    chosen = set(vertices)
    for e, (u, v) in enumerate(graph.edges):
        for w in (u, v):
            if w in chosen:
                x[element_index(w, e, ne)] = 1
    return tuple(x)


def independent_set_from_blocking(graph: Graph, x) -> tuple[int, ...]:
    """Vertices whose incident entries are all blocked (follower earns 0 there)."""
    ne = graph.num_edges
    out = []
    for v in range(graph.num_vertices):
        if all(
            x[element_index(v, e, ne)] for e, edge in enumerate(graph.edges) if v in edge
        ):
            out.append(v)
    return tuple(out)


def _random_partition(rng: random.Random, n: int, k: int) -> list[list[int]]:
    groups: list[list[int]] = [[] for _ in range(k)]
    for i in range(n):
        groups[rng.randrange(k)].append(i)
    for g in range(k):
        if not groups[g]:
            donor = max(range(k), key=lambda h: (len(groups[h]), -h))
            moved = groups[donor].pop(rng.randrange(len(groups[donor])))
            groups[g].append(moved)
    return [sorted(g) for g in groups]


def gen_random(
    n: int,
    k_l: int,
    k_f: int,
    seed: int,
    leader_budget: tuple[int, int] = (0, 3),
    follower_budget: tuple[int, int] = (1, 3),
    weight_range: tuple[int, int] = (0, 20),
    distinct_weights: bool = False,
) -> Instance:
    """Seeded random instance with integer weights.

    Budgets are drawn uniformly from their ranges and clamped to group
    sizes.  With ``distinct_weights`` the weights are distinct values
    sampled from ``weight_range``.
    """
    if n < 1:
        raise InfeasibleParams("n must be positive")
    if not (1 <= k_l <= n and 1 <= k_f <= n):
        raise InfeasibleParams(f"need 1 <= k_l, k_f <= n (got {k_l}, {k_f}, n={n})")
    for name, (lo, hi) in (
        ("leader_budget", leader_budget),
        ("follower_budget", follower_budget),
        ("weight_range", weight_range),
    ):
        if lo < 0 or lo > hi:
            raise InfeasibleParams(f"{name}=({lo}, {hi}) is not a nonnegative range")
    lo, hi = weight_range
    if distinct_weights and hi - lo + 1 < n:
        raise InfeasibleParams(f"weight_range has fewer than {n} distinct values")

    rng = random.Random(seed)
    if distinct_weights:
        weights = rng.sample(range(lo, hi + 1), n)
    else:
        weights = [rng.randint(lo, hi) for _ in range(n)]
    leader = _random_partition(rng, n, k_l)
    follower = _random_partition(rng, n, k_f)
    return make_instance(
        weights=weights,
        leader_groups=leader,
        leader_budgets=[rng.randint(*leader_budget) for _ in leader],
        follower_groups=follower,
        follower_budgets=[rng.randint(*follower_budget) for _ in follower],
        meta={"generator": "random", "seed": seed, "distinct_weights": distinct_weights},
    )


def random_graph(num_vertices: int, seed: int, p: float = 0.5) -> Graph:
    rng = random.Random(seed)
    edges = [
        (u, v)
        for u in range(num_vertices)
        for v in range(u + 1, num_vertices)
        if rng.random() < p
    ]
    return Graph(num_vertices, tuple(edges))
