from fractions import Fraction

import pytest
from helpers import lp_violations, parse_lp, random_small

from pmi.catalog import cycle4_graph
from pmi.dual import dual_breakdown, solve_dual
from pmi.errors import (
    GraphError,
    InstanceSyntaxError,
    NonPartition,
    ScaleOverflow,
    SchemaError,
)
from pmi.io import (
    export_ilp,
    parse_graph,
    parse_instance,
    serialize_graph,
    serialize_instance,
)
from pmi.model import make_instance

FIG1_TEXT = """{
  "n": 5,
  "weights": [1, 2, 3, 4, 5],
  "leader": {"groups": [[0, 1], [2, 3, 4]], "budgets": [1, 1]},
  "follower": {"groups": [[1, 2], [0, 3, 4]], "budgets": [1, 1]}
}
"""


def test_parse_figure1(fig1):
    inst = parse_instance(FIG1_TEXT)
    assert inst == fig1


def test_round_trip(fig1, ex1):
    for inst in (fig1, ex1, random_small(3), random_small(4, weight_range=(0, 3))):
        assert parse_instance(serialize_instance(inst)) == inst


def test_round_trip_rational():
    inst = make_instance(["1.25", "7/3", 2], [[0, 1, 2]], [1], [[0, 1, 2]], [2])
    text = serialize_instance(inst)
    assert '"1.25"' in text and '"7/3"' in text
    assert parse_instance(text) == inst


def test_decimal_string_is_exact():
    text = FIG1_TEXT.replace("[1, 2, 3, 4, 5]", '["1.25", 2, 3, 4, 5]')
    inst = parse_instance(text)
    assert inst.weights[0] == Fraction(5, 4)
    assert inst.scale == 4
    assert inst.scaled_weights == (5, 8, 12, 16, 20)


def test_json_float_is_exact():
    inst = parse_instance(FIG1_TEXT.replace("[1, 2, 3, 4, 5]", "[0.1, 2, 3, 4, 5]"))
    assert inst.weights[0] == Fraction(1, 10)


def test_overlapping_leader_groups():
    text = FIG1_TEXT.replace("[[0, 1], [2, 3, 4]]", "[[0, 1, 2], [2, 3, 4]]")
    with pytest.raises(NonPartition) as err:
        parse_instance(text)
    assert err.value.element == 2
    assert err.value.side == "leader"


def test_unknown_field_has_position():
    text = FIG1_TEXT.replace('"n": 5,', '"n": 5,\n  "colour": "red",')
    with pytest.raises(SchemaError) as err:
        parse_instance(text)
    assert err.value.field == "colour"
    assert (err.value.line, err.value.col) == (3, 3)


def test_unknown_nested_field():
    text = FIG1_TEXT.replace('"budgets": [1, 1]}', '"budgets": [1, 1], "caps": 2}', 1)
    with pytest.raises(SchemaError) as err:
        parse_instance(text)
    assert err.value.field == "leader.caps"


def test_syntax_error_position():
    with pytest.raises(InstanceSyntaxError) as err:
        parse_instance('{\n  "n": 5,\n  "weights": [1, 2,, 3]\n}')
    assert err.value.line == 3


def test_graph_round_trip():
    g = cycle4_graph()
    assert parse_graph(serialize_graph(g)) == g
    assert parse_graph("c comment\np 2 1\n\ne 1 0\n").edges == ((0, 1),)


@pytest.mark.parametrize(
    "text",
    ["e 0 1\n", "p 3 2\ne 0 1\n", "p 3 1\ne 0 x\n", "p 3 1\nq 0 1\n", "p 2 1\ne 0 0\n"],
)
def test_graph_errors(text):
    with pytest.raises(GraphError):
        parse_graph(text)


# -- LP export --------------------------------------------------------------------------

def test_lp_figure1_shape(fig1):
    objective, rows, binaries, bounds = parse_lp(export_ilp(fig1))
    assert objective == {"t_0": 1, "t_1": 1}
    assert sum(b.startswith("x_") for b in binaries) == 5
    assert sum(b.startswith("z_") for b in binaries) == 12
    assert set(bounds) == {"t_0 >= 0", "t_1 >= 0"}
    assert sum(name.startswith("cut_") for name in rows) == 12
    assert sum(name.startswith("pick_") for name in rows) == 2
    assert sum(name.startswith("leader_") for name in rows) == 2


def _assignment(inst, x, j, t):
    a = {f"x_{i}": v for i, v in enumerate(x)}
    for k in range(inst.k_f):
        for jj in range(inst.n + 1):
            a[f"z_{k}_{jj}"] = int(j[k] == jj)
        a[f"t_{k}"] = t[k]
    return a


def test_lp_figure1_substitution(fig1):
    objective, rows, _, _ = parse_lp(export_ilp(fig1))
    a = _assignment(fig1, (0, 1, 1, 0, 0), (0, 5), (0, 5))
    assert lp_violations(rows, a) == []
    assert sum(c * a[v] for v, c in objective.items()) == 5


def test_lp_wrong_assignment_is_caught(fig1):
    _, rows, _, _ = parse_lp(export_ilp(fig1))
    a = _assignment(fig1, (0, 1, 1, 0, 0), (0, 5), (0, 4))
    assert lp_violations(rows, a)


def test_lp_zero_follower_budget():
    inst = make_instance([3, 1, 2], [[0, 1, 2]], [1], [[0, 1, 2]], [0])
    objective, rows, _, _ = parse_lp(export_ilp(inst))
    a = _assignment(inst, (0, 0, 0), (3,), (0,))
    assert lp_violations(rows, a) == []


@pytest.mark.parametrize("seed", range(15))
def test_lp_substitution_random(seed):
    inst = random_small(seed, n_range=(2, 10))
    r = solve_dual(inst)
    parts = dual_breakdown(inst, r.x_opt)
    objective, rows, _, _ = parse_lp(export_ilp(inst))
    a = _assignment(inst, r.x_opt, [j for _, j in parts], [v for v, _ in parts])
    assert lp_violations(rows, a) == []
    assert sum(c * a[v] for v, c in objective.items()) == r.objective


@pytest.mark.parametrize("seed", range(10))
def test_lp_row_count(seed):
    inst = random_small(seed)
    _, rows, _, _ = parse_lp(export_ilp(inst))
    nonempty = sum(1 for g in inst.leader_groups if g)
    assert len(rows) == inst.k_f * (inst.n + 1) + inst.k_f + nonempty


def test_lp_deterministic(fig1):
    assert export_ilp(fig1) == export_ilp(parse_instance(serialize_instance(fig1)))


def test_lp_long_rows_wrap():
    inst = random_small(0, n_range=(40, 40), k_max=1)
    text = export_ilp(inst)
    assert max(len(line) for line in text.splitlines()) <= 80
    _, rows, _, _ = parse_lp(text)
    assert len(rows) == inst.k_f * 41 + inst.k_f + 1


def test_scale_overflow():
    with pytest.raises(ScaleOverflow):
        make_instance([2**62, 2**62], [[0, 1]], [1], [[0, 1]], [2])
