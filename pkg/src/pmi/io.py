"""File formats: JSON instances, edge-list graphs and the LP export.

Instance files are one JSON object::

    {"n": 5,
     "weights": [1, 2, "3.5", "7/3", 5],
     "leader":   {"groups": [[0, 1], [2, 3, 4]], "budgets": [1, 1]},
     "follower": {"groups": [[1, 2], [0, 3, 4]], "budgets": [1, 1]},
     "meta": {}}

Weights may be JSON numbers or strings; strings (and JSON decimals) are
read exactly.  Graph files are ``p <V> <E>`` followed by ``e <u> <v>``
lines with 0-based vertices; ``c`` lines are comments.
"""

from __future__ import annotations

import json
from decimal import Decimal
from fractions import Fraction
from typing import Any

from pmi.errors import GraphError, InstanceSyntaxError, SchemaError
from pmi.model import Instance, SortedInstance, validate_instance
from pmi.oracle import Graph

_TOP_KEYS = {"n", "weights", "leader", "follower", "meta"}
_SIDE_KEYS = {"groups", "budgets"}


def _locate(text: str, needle: str) -> tuple[int | None, int | None]:
    pos = text.find(needle)
    if pos < 0:
        return None, None
    line = text.count("\n", 0, pos) + 1
    col = pos - (text.rfind("\n", 0, pos) + 1) + 1
    return line, col


def parse_instance(text: str) -> Instance:
    """Parse and validate an instance file; unknown keys are rejected."""
    try:
        raw = json.loads(text, parse_float=Decimal)
    except json.JSONDecodeError as exc:
        raise InstanceSyntaxError(exc.msg, exc.lineno, exc.colno) from None
    if not isinstance(raw, dict):
        raise SchemaError("the top level must be a JSON object", "<root>", 1, 1)
    for key in raw:
        if key not in _TOP_KEYS:
            raise SchemaError("unknown field", key, *_locate(text, f'"{key}"'))
    for side in ("leader", "follower"):
        block = raw.get(side)
        if isinstance(block, dict):
            for key in block:
                if key not in _SIDE_KEYS:
                    raise SchemaError("unknown field", f"{side}.{key}", *_locate(text, f'"{key}"'))
    return validate_instance(raw)


def format_weight(w: Fraction) -> int | str:
    if w.denominator == 1:
        return w.numerator
    d = w.denominator
    for p in (2, 5):
        while d % p == 0:
            d //= p
    if d == 1:
        return format(Decimal(w.numerator) / Decimal(w.denominator), "f")
    return str(w)


def serialize_instance(instance: Instance) -> str:
    def dump(value: Any) -> str:
        return json.dumps(value, separators=(", ", ": "))

    lines = [
        "{",
        f'  "n": {instance.n},',
        f'  "weights": {dump([format_weight(w) for w in instance.weights])},',
        f'  "leader": {{"groups": {dump([list(g) for g in instance.leader_groups])}, '
        f'"budgets": {dump(list(instance.leader_budgets))}}},',
        f'  "follower": {{"groups": {dump([list(g) for g in instance.follower_groups])}, '
        f'"budgets": {dump(list(instance.follower_budgets))}}},',
        f'  "meta": {json.dumps(dict(instance.meta), sort_keys=True)}',
        "}",
    ]
    return "\n".join(lines) + "\n"


def read_instance(path) -> Instance:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())


def write_instance(instance: Instance, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_instance(instance))


def parse_graph(text: str) -> Graph:
    header = None
    edges = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        parts = line.split()
        if not parts or parts[0] == "c":
            continue
        try:
            if parts[0] == "p":
                if header is not None or len(parts) != 3:
                    raise GraphError(f"line {lineno}: bad or repeated header")
                header = (int(parts[1]), int(parts[2]))
            elif parts[0] == "e":
                if header is None or len(parts) != 3:
                    raise GraphError(f"line {lineno}: edge before header or malformed")
                edges.append((int(parts[1]), int(parts[2])))
            else:
                raise GraphError(f"line {lineno}: unknown record {parts[0]!r}")
        except ValueError:
            raise GraphError(f"line {lineno}: expected integers") from None
    if header is None:
        raise GraphError("missing 'p <V> <E>' header")
    if len(edges) != header[1]:
        raise GraphError(f"header announces {header[1]} edges, found {len(edges)}")
    return Graph.from_edges(header[0], edges)


def serialize_graph(graph: Graph) -> str:
    lines = [f"p {graph.num_vertices} {graph.num_edges}"]
    lines += [f"e {u} {v}" for u, v in graph.edges]
    return "\n".join(lines) + "\n"


def _expr(terms: list[tuple[int, str]]) -> str:
    out = []
    for coef, var in terms:
        sign = "-" if coef < 0 else "+"
        mag = abs(coef)
        body = var if mag == 1 else f"{mag} {var}"
        out.append(f"{sign} {body}")
    text = " ".join(out)
    return text[2:] if text.startswith("+ ") else text


def _wrap(head: str, body: str, width: int = 78) -> list[str]:
    lines = []
    current = head
    for token in body.split(" "):
        if len(current) + 1 + len(token) > width and current.strip():
            lines.append(current)
            current = "   "
        current = f"{current} {token}" if current else token
    lines.append(current)
    return lines


def export_ilp(instance: Instance | SortedInstance) -> str:
    """Single-level mixed-binary program in CPLEX LP format.

    Variables: ``x_<i>`` blocks original element ``i``; ``z_<k>_<j>`` picks
    breakpoint position ``j`` (0..n, weight-sorted) for follower group
    ``k``; ``t_<k>`` is group ``k``'s follower value.  For every ``(k, j)``::

        t_k >= expr_kj(x) - M_kj (1 - z_kj),  M_kj = expr_kj(0)

    which is written as ``t_k + sum(g_i x_i) - M_kj z_kj >= 0``.  Coefficients
    are the scaled integer weights; divide the objective by ``scale``.
    ``t_k`` is kept continuous: at an optimum it equals an integer anyway.
    """
    s = instance if isinstance(instance, SortedInstance) else instance.sorted_view
    inst = s.base
    n = inst.n
    w = s.sorted_weights
    out = [
        "\\ PMI single-level reformulation",
        f"\\ n = {n}, leader groups = {inst.k_l}, follower groups = {inst.k_f}, scale = {s.scale}",
        "\\ x_<i>: element i blocked; z_<k>_<j>: group k uses breakpoint j",
        "\\ t_<k>: follower value of group k",
        "Minimize",
    ]
    out += _wrap(" obj:", _expr([(1, f"t_{k}") for k in range(inst.k_f)]))
    out.append("Subject To")
    for k, (group, l) in enumerate(zip(inst.leader_groups, inst.leader_budgets)):
        if group:
            out += _wrap(f" leader_{k}:", _expr([(1, f"x_{i}") for i in group]) + f" <= {l}")
    for k in range(inst.k_f):
        out += _wrap(f" pick_{k}:", _expr([(1, f"z_{k}_{j}") for j in range(n + 1)]) + " = 1")
    for k, (positions, f) in enumerate(zip(s.follower_positions, inst.follower_budgets)):
        for j in range(n + 1):
            terms = [(1, f"t_{k}")]
            big_m = w[j] * f
            for p in positions:
                if p > j and w[p] > w[j]:
                    g = w[p] - w[j]
                    big_m += g
                    terms.append((g, f"x_{s.order[p]}"))
            body = _expr(terms)
            body += f" - {big_m} z_{k}_{j}" if big_m else f" + 0 z_{k}_{j}"
            out += _wrap(f" cut_{k}_{j}:", body + " >= 0")
    out.append("Bounds")
    out += [f" t_{k} >= 0" for k in range(inst.k_f)]
    out.append("Binaries")
    out += _wrap("", " ".join(f"x_{i}" for i in range(n)))
    for k in range(inst.k_f):
        out += _wrap("", " ".join(f"z_{k}_{j}" for j in range(n + 1)))
    out.append("End")
    return "\n".join(out) + "\n"
