"""Command-line interface: ``pmi solve|gen|reduce-mis|export-ilp|check``.

Exit status: 0 success, 1 user error (bad file or flags), 2 solver
disagreement found by ``check``.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from fractions import Fraction

from pmi.dp import DP_MEMORY_BUDGET
from pmi.dual import DUAL_ENUMERATION_BUDGET, dual_inner_value
from pmi.errors import PMIError
from pmi.io import export_ilp, parse_graph, read_instance, write_instance
from pmi.model import Instance, psi
from pmi.oracle import FULL_ORACLE_CAP, LEADER_ORACLE_CAP, count_leader_decisions
from pmi.reduction import gen_random, reduce_mis
from pmi.solvers import ALGORITHMS, select_algorithm, solve

EXIT_OK = 0
EXIT_USER = 1
EXIT_DISAGREE = 2

ALL_X_CAP = 16


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: error: {message}")


def _fmt_value(objective: int, scale: int) -> str:
    return str(Fraction(objective, scale))


def _bits(x) -> str:
    return " ".join(str(v) for v in x)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pmi", description="Partition matroid interdiction solver")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("instance")
    p.add_argument("--algo", choices=ALGORITHMS, default="auto")
    p.add_argument("--json", action="store_true", help="print the result as JSON")
    p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("gen", help="write a seeded random instance")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kl", type=int, required=True)
    p.add_argument("--kf", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--distinct-weights", action="store_true")
    p.add_argument("--weight-min", type=int, default=0)
    p.add_argument("--weight-max", type=int, default=20)
    p.add_argument("--leader-budget", type=int, nargs=2, default=(0, 3), metavar=("LO", "HI"))
    p.add_argument("--follower-budget", type=int, nargs=2, default=(1, 3), metavar=("LO", "HI"))
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("reduce-mis", help="reduce an independent-set question to PMI")
    p.add_argument("graph")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("export-ilp", help="write the single-level ILP in LP format")
    p.add_argument("instance")
    p.add_argument("-o", "--output", required=True)

    p = sub.add_parser("check", help="cross-check every applicable solver")
    p.add_argument("instance")
    p.add_argument("--all-x", action="store_true", help="also verify duality at every binary x")
    p.add_argument("--threads", type=int, default=1)
    return parser


def _cmd_solve(args) -> int:
    inst = read_instance(args.instance)
    chosen = select_algorithm(inst) if args.algo == "auto" else args.algo
    result = solve(inst, chosen, threads=args.threads)
    warning = None
    if result.solver == "greedy" and not result.exact:
        warning = (
            "greedy result is not guaranteed optimal "
            "(needs a single follower group and distinct weights)"
        )
    if args.json:
        payload = result.to_dict()
        payload["requested"] = args.algo
        if warning:
            payload["warning"] = warning
        print(json.dumps(payload))
    else:
        print(f"solver: {result.solver}" + (" (auto)" if args.algo == "auto" else ""))
        print(f"objective: {result.objective} (scale {result.scale})")
        print(f"value: {_fmt_value(result.objective, result.scale)}")
        print(f"x_opt: {_bits(result.x_opt)}")
        print(f"y: {_bits(result.response.y)}")
        if result.breakpoints is not None:
            print(f"breakpoints: {_bits(result.breakpoints)}")
    if warning:
        print(f"warning: {warning}", file=sys.stderr)
    return EXIT_OK


def _cmd_gen(args) -> int:
    inst = gen_random(
        args.n,
        args.kl,
        args.kf,
        args.seed,
        leader_budget=tuple(args.leader_budget),
        follower_budget=tuple(args.follower_budget),
        weight_range=(args.weight_min, args.weight_max),
        distinct_weights=args.distinct_weights,
    )
    write_instance(inst, args.output)
    print(f"wrote {args.output} (n={inst.n}, k_l={inst.k_l}, k_f={inst.k_f})")
    return EXIT_OK


def _cmd_reduce(args) -> int:
    with open(args.graph, encoding="utf-8") as fh:
        graph = parse_graph(fh.read())
    inst, threshold = reduce_mis(graph, args.q)
    write_instance(inst, args.output)
    print(f"threshold: {threshold}")
    return EXIT_OK


def _cmd_export(args) -> int:
    inst = read_instance(args.instance)
    text = export_ilp(inst)
    with open(args.output, "w", encoding="utf-8") as fh:
        fh.write(text)
    print(f"wrote {args.output}")
    return EXIT_OK


def applicable_solvers(inst: Instance) -> list[str]:
    algos = []
    if inst.n <= FULL_ORACLE_CAP:
        algos.append("oracle-full")
    if count_leader_decisions(inst) <= LEADER_ORACLE_CAP:
        algos.append("oracle-leader")
    if (inst.n + 1) ** inst.k_f <= DUAL_ENUMERATION_BUDGET:
        algos.append("dual")
    states = 1
    for l in inst.leader_budgets:
        states *= l + 1
    if states * inst.k_f <= DP_MEMORY_BUDGET:
        algos.append("dp")
    return algos


def _cmd_check(args) -> int:
    inst = read_instance(args.instance)
    failures = 0
    values = {}
    for algo in applicable_solvers(inst):
        result = solve(inst, algo, threads=args.threads)
        values[algo] = result.objective
        ok = inst.is_feasible(result.x_opt) and psi(inst, result.x_opt) == result.objective
        if not ok:
            failures += 1
        print(f"{algo}: {result.objective}{'' if ok else '  INCONSISTENT'}")
    if not values:
        print("no exact solver fits this instance", file=sys.stderr)
        return EXIT_USER
    if len(set(values.values())) != 1:
        print("DISAGREEMENT between exact solvers")
        failures += 1

    greedy = solve(inst, "greedy")
    reference = next(iter(values.values()))
    if greedy.exact:
        status = "ok" if greedy.objective == reference else "MISMATCH"
        failures += status != "ok"
        print(f"greedy: {greedy.objective} (exactness applies, {status})")
    else:
        print(f"greedy: {greedy.objective} (heuristic, not compared)")

    if args.all_x:
        if inst.n > ALL_X_CAP:
            print(f"--all-x needs n <= {ALL_X_CAP}", file=sys.stderr)
            return EXIT_USER
        bad = feasible = 0
        for x in itertools.product((0, 1), repeat=inst.n):
            feasible += inst.is_feasible(x)
            if dual_inner_value(inst, x) != psi(inst, x):
                bad += 1
        total = 2**inst.n
        print(f"duality: {total - bad}/{total} binary x agree ({feasible} leader-feasible)")
        failures += bad
    print("check: PASS" if failures == 0 else "check: FAIL")
    return EXIT_OK if failures == 0 else EXIT_DISAGREE


_COMMANDS = {
    "solve": _cmd_solve,
    "gen": _cmd_gen,
    "reduce-mis": _cmd_reduce,
    "export-ilp": _cmd_export,
    "check": _cmd_check,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USER
    try:
        return _COMMANDS[args.command](args)
    except (PMIError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USER


if __name__ == "__main__":
    sys.exit(main())
