"""Shared generators for the test suite."""

from __future__ import annotations

import random

from bcsolve.box import Box
from bcsolve.expr import Binary, Const, Constraint, PowInt, Problem, Unary, Var, parse
from bcsolve.interval import Interval

QUADRATIC = """
var x in [-10,10];
var y in [-10,10];
var z in [-10,10];
2*x = z - y^2;
"""

_BINARY = ("add", "sub", "mul", "div")
_UNARY = ("neg", "exp", "cos", "sqrt", "pow2", "pow3")


def quadratic_problem() -> Problem:
    return parse(QUADRATIC)


def random_admissible(rng: random.Random, max_depth: int = 6, binary=_BINARY):
    """Random constraint in which every variable occurs once.

    Returns ``(constraint, domains)``. Leaves are fresh variables or small
    constants; the right-hand side is a variable or a constant. ``binary``
    restricts the binary operators drawn.
    """
    names: list[str] = []

    def leaf():
        if rng.random() < 0.25:
            return Const.of(str(rng.choice([1, 2, 3, 0.5, 1.5])))
        v = f"v{len(names)}"
        names.append(v)
        return Var(v)

    def tree(depth: int):
        if depth == 0 or (depth < max_depth and rng.random() < 0.3):
            return leaf()
        kind = rng.random()
        if kind < 0.6:
            return Binary(rng.choice(binary), tree(depth - 1), tree(depth - 1))
        op = rng.choice(_UNARY)
        child = tree(depth - 1)
        if op == "pow2":
            return PowInt(child, 2)
        if op == "pow3":
            return PowInt(child, 3)
        return Unary(op, child)

    lhs = tree(max_depth)
    while not names:
        lhs = Binary("add", lhs, leaf())
    if rng.random() < 0.5:
        rhs = leaf()
        if not isinstance(rhs, Var):
            rhs = Const.of(str(rng.choice([0, 1, 2, 5])))
    else:
        rhs = Const.of(str(rng.choice([0, 1, 2, 5])))
    doms = {}
    for v in names:
        lo = rng.choice([-10.0, -5.0, -2.0, -1.0, 0.0, 0.5])
        hi = lo + rng.choice([0.5, 1.0, 3.0, 10.0, 20.0])
        doms[v] = Interval(lo, hi)
    return Constraint(lhs, rhs), Box(doms)


def problem_of(c: Constraint, d: Box) -> Problem:
    return Problem(tuple(d), d, (c,))
