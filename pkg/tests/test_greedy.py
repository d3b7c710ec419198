import itertools
import random
from fractions import Fraction

import pytest

from pmi.greedy import greedy_gap_family, solve_greedy
from pmi.matroid import LeaderMatroid
from pmi.model import make_instance, psi
from pmi.oracle import solve_oracle_leader
from pmi.reduction import gen_random


def test_example1_greedy_is_suboptimal(ex1):
    r = solve_greedy(ex1)
    assert r.objective == 101
    assert r.x_opt == (0, 1, 1, 0, 0)
    assert r.exact is False
    assert r.trace == [103, 102, 101]


def test_single_follower_group_example():
    inst = make_instance([1, 2, 3, 4, 5], [[0, 1, 2], [3, 4]], [1, 1], [range(5)], [2])
    r = solve_greedy(inst)
    assert r.objective == 6
    assert r.x_opt == (0, 0, 1, 0, 1)
    assert r.exact is True
    assert r.trace == [9, 7, 6]
    assert solve_oracle_leader(inst).objective == 6


def test_zero_budgets_block_nothing():
    inst = make_instance([1, 2, 3, 4, 5], [[0, 1], [2, 3, 4]], [0, 0], [[1, 2], [0, 3, 4]], [1, 1])
    r = solve_greedy(inst)
    assert r.x_opt == (0,) * 5
    assert r.objective == psi(inst, (0,) * 5) == 8
    assert r.stats["iterations"] == 0


def test_unknown_tie_break(fig1):
    with pytest.raises(ValueError):
        solve_greedy(fig1, tie_break="random")


def test_tie_break_rules_differ_only_in_order():
    # k_f = 1 with equal marginals: both blocks are zero-marginal except the top.
    inst = make_instance([5, 5, 1], [[0, 1, 2]], [1], [[0, 1, 2]], [1])
    assert solve_greedy(inst, tie_break="weight").objective == 5
    assert solve_greedy(inst, tie_break="index").objective == 5


@pytest.mark.parametrize("M, greedy, optimal", [(10, 11, 3), (100, 101, 3), (1000, 1001, 3)])
def test_gap_family(M, greedy, optimal):
    (row,) = greedy_gap_family([M])
    assert (row.greedy, row.optimal) == (greedy, optimal)
    assert row.ratio == Fraction(M + 1, 3)


def test_gap_family_rejects_small_M():
    with pytest.raises(ValueError):
        greedy_gap_family([3])


@pytest.mark.parametrize("seed", range(40))
def test_feasible_maximal_monotone(seed):
    rng = random.Random(seed)
    n = rng.randint(3, 12)
    inst = gen_random(n, rng.randint(1, 3), rng.randint(1, 3), seed)
    r = solve_greedy(inst)
    m = LeaderMatroid.from_instance(inst)
    assert m.is_independent(r.x_opt)
    for i in range(n):
        if not r.x_opt[i]:
            grown = list(r.x_opt)
            grown[i] = 1
            assert not m.is_independent(grown)
    assert all(a >= b for a, b in zip(r.trace, r.trace[1:]))
    assert r.exact == (inst.k_f == 1 and inst.distinct_weights())


@pytest.mark.parametrize("seed", range(30))
@pytest.mark.parametrize("tie_break", ["weight", "index"])
def test_exact_when_single_group_and_distinct(seed, tie_break):
    rng = random.Random(seed)
    n = rng.randint(2, 12)
    inst = gen_random(n, rng.randint(1, min(3, n)), 1, seed, distinct_weights=True)
    r = solve_greedy(inst, tie_break=tie_break)
    assert r.exact
    assert r.objective == solve_oracle_leader(inst).objective


def _graphic_tester(edges):
    """Forest test on a small graph: a 0/1 vector over ``edges`` is independent iff acyclic."""

    def independent(x):
        parent = {}

        def find(a):
            while parent.get(a, a) != a:
                a = parent[a]
            return a

        for chosen, (u, v) in zip(x, edges):
            if chosen:
                ru, rv = find(u), find(v)
                if ru == rv:
                    return False
                parent[ru] = rv
        return True

    return independent


K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]


def test_graphic_tester_is_a_matroid():
    tester = _graphic_tester(K4_EDGES)
    indep = [x for x in itertools.product((0, 1), repeat=6) if tester(x)]
    indep_set = set(indep)
    for x in indep:
        for i in range(6):
            if x[i]:
                smaller = x[:i] + (0,) + x[i + 1:]
                assert smaller in indep_set
    for a in indep:
        for b in indep:
            if sum(a) < sum(b):
                assert any(
                    not a[i] and b[i] and (a[:i] + (1,) + a[i + 1:]) in indep_set
                    for i in range(6)
                )


@pytest.mark.parametrize("seed", range(20))
def test_exact_on_graphic_matroid(seed):
    rng = random.Random(seed)
    weights = rng.sample(range(1, 30), 6)
    inst = make_instance(weights, [range(6)], [6], [range(6)], [rng.randint(1, 4)])
    m = LeaderMatroid.from_tester(6, _graphic_tester(K4_EDGES))
    g = solve_greedy(inst, m)
    o = solve_oracle_leader(inst, m)
    assert g.exact
    assert m.is_independent(g.x_opt)
    assert g.objective == o.objective
