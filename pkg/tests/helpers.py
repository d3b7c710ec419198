"""Independent brute-force helpers shared by the test modules.

Nothing here calls the package's solvers; these are the oracles the
solvers are checked against.
"""

from __future__ import annotations

import itertools
import random
import re


def one_based(*ids):
    """Shift 1-based element ids to the 0-based ids used by the library."""
    return [i - 1 for i in ids]


def decision(n, blocked_one_based=()):
    x = [0] * n
    for i in blocked_one_based:
        x[i - 1] = 1
    return tuple(x)


def brute_follower(inst, x):
    """Best follower value by enumerating every 0/1 vector y."""
    w = inst.scaled_weights
    best = 0
    best_y = (0,) * inst.n
    for y in itertools.product((0, 1), repeat=inst.n):
        if any(y[i] and x[i] for i in range(inst.n)):
            continue
        if any(sum(y[i] for i in g) > f for g, f in zip(inst.follower_groups, inst.follower_budgets)):
            continue
        v = sum(wi * yi for wi, yi in zip(w, y))
        if v > best:
            best, best_y = v, y
    return best, best_y


def brute_group_value(inst, x, k):
    """Follower optimum of one group in isolation."""
    group = inst.follower_groups[k]
    f = inst.follower_budgets[k]
    w = inst.scaled_weights
    free = [i for i in group if not x[i]]
    best = 0
    for size in range(min(f, len(free)) + 1):
        for combo in itertools.combinations(free, size):
            best = max(best, sum(w[i] for i in combo))
    return best


def leader_feasible(inst, x):
    return all(sum(x[i] for i in g) <= l for g, l in zip(inst.leader_groups, inst.leader_budgets))


def brute_opt(inst):
    """Min over feasible x of the brute-force follower value."""
    best = None
    for x in itertools.product((0, 1), repeat=inst.n):
        if leader_feasible(inst, x):
            v, _ = brute_follower(inst, x)
            if best is None or v < best:
                best = v
    return best


def independent_sets(n, groups, budgets):
    for x in itertools.product((0, 1), repeat=n):
        if all(sum(x[i] for i in g) <= b for g, b in zip(groups, budgets)):
            yield x


# -- LP format evaluation -------------------------------------------------

_TERM = re.compile(r"([+-]?)\s*(\d+)?\s*([A-Za-z_][A-Za-z0-9_]*)")


def _parse_terms(expr):
    terms = []
    for sign, coef, var in _TERM.findall(expr):
        c = int(coef) if coef else 1
        terms.append((-c if sign == "-" else c, var))
    return terms


def parse_lp(text):
    """Minimal reader for the exported LP: objective terms, rows, binaries, bounds."""
    section = None
    logical = []
    for raw in text.splitlines():
        line = raw.split("\\", 1)[0].rstrip()
        if not line.strip():
            continue
        head = line.strip().lower()
        if head in ("minimize", "subject to", "bounds", "binaries", "end"):
            section = head
            continue
        if raw.startswith("   ") and logical:
            logical[-1] = (logical[-1][0], logical[-1][1] + " " + line.strip())
        else:
            logical.append((section, line.strip()))

    objective = {}
    rows = {}
    binaries = []
    bounds = []
    for section, line in logical:
        if section == "minimize":
            name, expr = line.split(":", 1)
            objective = {v: c for c, v in _parse_terms(expr)}
        elif section == "subject to":
            name, body = line.split(":", 1)
            m = re.match(r"(.*?)(<=|>=|=)\s*(-?\d+)\s*$", body)
            rows[name.strip()] = (_parse_terms(m.group(1)), m.group(2), int(m.group(3)))
        elif section == "binaries":
            binaries += line.split()
        elif section == "bounds":
            bounds.append(line)
    return objective, rows, binaries, bounds


def lp_violations(rows, assignment):
    bad = []
    for name, (terms, sense, rhs) in rows.items():
        lhs = sum(c * assignment.get(v, 0) for c, v in terms)
        ok = {"<=": lhs <= rhs, ">=": lhs >= rhs, "=": lhs == rhs}[sense]
        if not ok:
            bad.append((name, lhs, sense, rhs))
    return bad


def random_small(seed, n_range=(2, 12), k_max=3, **kwargs):
    """Random instance with ``k_l, k_f <= min(k_max, n)``, seeded by ``seed``."""
    from pmi.reduction import gen_random

    rng = random.Random(seed)
    n = rng.randint(*n_range)
    k_l = rng.randint(1, min(k_max, n))
    k_f = rng.randint(1, min(k_max, n))
    return gen_random(n, k_l, k_f, seed, **kwargs)
