"""Compile constraint trees into primitive constraints with fresh variables.

Each internal node of a constraint tree that involves a variable becomes one
primitive ``op(inputs) = output``. Fresh variables are named ``α1, α2, ...``
in post-order, left to right. The two sides are linked as follows:

* ``T = v`` or ``v = T`` with ``v`` a variable and ``T`` an operator tree:
  the top primitive of ``T`` outputs ``v`` directly;
* ``T = c`` with ``c`` variable-free: the top primitive outputs ``α0`` whose
  domain is fixed to the value of ``c``;
* otherwise ``lhs - rhs = α0`` with ``α0`` fixed to ``[0,0]``.

Variable-free subtrees are folded into constant operands of the primitive
that consumes them (no variable can be projected through them).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

from .box import Box
from .expr import (Binary, Const, Constraint, Expr, PowInt, Problem, Unary, Var,
                   evaluate, has_vars, node_count, to_text)
from .interval import ENTIRE, Interval

Operand = Union[str, Const]

OPCODES = {"add": 0, "sub": 1, "mul": 2, "div": 3, "neg": 4, "exp": 5,
           "cos": 6, "sqrt": 7, "pow": 8}
ROOT = "α0"
_SYMBOL = {"add": "+", "sub": "-", "mul": "*", "div": "/"}


@dataclass(frozen=True)
class Primitive:
    """``op(inputs) = output`` with one operator; ``n`` is the exponent of
    ``pow``. Inputs are variable names or constants."""

    op: str
    inputs: tuple[Operand, ...]
    output: str
    n: int = 0

    def operand(self, slot: int) -> Operand:
        return self.output if slot == 0 else self.inputs[slot - 1]

    @property
    def slots(self) -> tuple[int, ...]:
        """Projection slots in revise order: variable inputs, then output."""
        ins = tuple(i + 1 for i, x in enumerate(self.inputs) if isinstance(x, str))
        return ins + (0,)

    @property
    def scope(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.operand(s) for s in self.slots))

    def rename(self, mapping: dict[str, str]) -> Primitive:
        ins = tuple(mapping.get(x, x) if isinstance(x, str) else x for x in self.inputs)
        return Primitive(self.op, ins, mapping.get(self.output, self.output), self.n)

    def __str__(self):
        def show(x):
            return x if isinstance(x, str) else x.text

        if self.op in _SYMBOL:
            a, b = (show(x) for x in self.inputs)
            lhs = f"{a} {_SYMBOL[self.op]} {b}"
        elif self.op == "neg":
            lhs = f"-{show(self.inputs[0])}"
        elif self.op == "pow":
            lhs = f"{show(self.inputs[0])}^{self.n}"
        else:
            lhs = f"{self.op}({show(self.inputs[0])})"
        return f"{lhs} = {self.output}"


@dataclass(frozen=True)
class Decomposition:
    """Primitives of one constraint plus the schedules derived from its tree.

    ``omega`` is the HC4revise order as ``(primitive index, slot)`` pairs;
    ``gamma``/``gamma_prime`` are the ordered partitions whose DBC runs
    reproduce it.
    """

    constraint: Constraint
    primitives: tuple[Primitive, ...]
    fresh: tuple[str, ...]
    init: dict  # fresh variable -> initial domain
    root: int
    child_prims: tuple[tuple[int, ...], ...]
    omega: tuple[tuple[int, int], ...]
    gamma: tuple[tuple[str, ...], ...]
    gamma_prime: tuple[tuple[str, ...], ...]
    nodes: int

    @property
    def p(self) -> int:
        return len(self.primitives)

    @property
    def k(self) -> int:
        """Largest primitive arity."""
        return max(len(q.scope) for q in self.primitives)

    @property
    def omega_vars(self) -> list[tuple[int, str]]:
        return [(i, self.primitives[i].operand(s)) for i, s in self.omega]

    @property
    def variables(self) -> tuple[str, ...]:
        return tuple(dict.fromkeys(self.constraint.scope + self.fresh))

    def initial_box(self, d: Box) -> Box:
        """``d`` extended with the fresh variables at their initial domains."""
        items = dict(d)
        items.update(self.init)
        return Box(items)

    def dump(self) -> str:
        lines = [f"constraint: {self.constraint}",
                 f"nodes: {self.nodes}  primitives: {self.p}  max arity: {self.k}",
                 "delta:"]
        lines += [f"  [{i}] {q}" for i, q in enumerate(self.primitives)]
        lines.append("omega:")
        lines += [f"  {j + 1}. [{i}] {q} -> {self.primitives[i].operand(s)}"
                  for j, (i, s) in enumerate(self.omega)
                  for q in [self.primitives[i]]]
        lines.append("gamma: " + _fmt_partition(self.gamma))
        lines.append("gamma': " + _fmt_partition(self.gamma_prime))
        return "\n".join(lines)


def _fmt_partition(blocks) -> str:
    return ", ".join("{" + ",".join(b) + "}" for b in blocks)


class _Builder:
    def __init__(self):
        self.prims: list[Primitive] = []
        self.kids: list[tuple[int, ...]] = []
        self.producer: dict[str, int] = {}
        self.count = 0

    def fresh(self) -> str:
        self.count += 1
        return f"α{self.count}"

    def operand(self, e: Expr) -> Operand:
        if isinstance(e, Var):
            return e.name
        if not has_vars(e):
            if isinstance(e, Const):
                return e
            return Const(evaluate(e, {}), f"({to_text(e)})")
        return self.node(e, None)

    def node(self, e: Expr, out: str | None) -> str:
        if isinstance(e, Binary):
            ins = (self.operand(e.left), self.operand(e.right))
            op, n = e.op, 0
        elif isinstance(e, PowInt):
            ins = (self.operand(e.child),)
            op, n = "pow", e.n
        else:
            assert isinstance(e, Unary)
            ins = (self.operand(e.child),)
            op, n = e.op, 0
        return self.emit(op, ins, out, n)

    def emit(self, op: str, ins: tuple[Operand, ...], out: str | None, n: int = 0) -> str:
        out = out or self.fresh()
        kids = tuple(self.producer[x] for x in ins if isinstance(x, str) and x in self.producer)
        self.prims.append(Primitive(op, ins, out, n))
        self.kids.append(kids)
        if out.startswith("α"):
            self.producer[out] = len(self.prims) - 1
        return out


def _is_tree(e: Expr) -> bool:
    return not isinstance(e, Var) and has_vars(e)


def decompose(c: Constraint) -> Decomposition:
    b = _Builder()
    lhs, rhs = c.lhs, c.rhs
    init: dict[str, Interval] = {}
    if _is_tree(lhs) and isinstance(rhs, Var):
        b.node(lhs, rhs.name)
    elif _is_tree(rhs) and isinstance(lhs, Var):
        b.node(rhs, lhs.name)
    elif _is_tree(lhs) and not has_vars(rhs):
        b.node(lhs, ROOT)
        init[ROOT] = evaluate(rhs, {})
    elif _is_tree(rhs) and not has_vars(lhs):
        b.node(rhs, ROOT)
        init[ROOT] = evaluate(lhs, {})
    else:
        left = b.operand(lhs)
        right = b.operand(rhs)
        b.emit("sub", (left, right), ROOT)
        init[ROOT] = Interval(0.0)
    prims = tuple(b.prims)
    root = len(prims) - 1
    fresh = tuple(q.output for q in prims if q.output.startswith("α"))
    for v in fresh:
        init.setdefault(v, ENTIRE)
    init = {v: init[v] for v in fresh}

    # HC4revise order: outputs bottom-up (creation order is post-order),
    # then inputs top-down in left-to-right preorder
    omega = [(i, 0) for i in range(len(prims))]
    for i in _preorder(root, b.kids, reverse=False):
        omega += [(i, s) for s in prims[i].slots if s != 0]

    # Gamma: right-to-left preorder, each visit yields its children's variables
    placed: set[str] = set()
    gamma = [(prims[root].output,)]
    placed.add(prims[root].output)
    for i in _preorder(root, b.kids, reverse=True):
        block = tuple(v for v in dict.fromkeys(x for x in prims[i].inputs if isinstance(x, str))
                      if v not in placed)
        placed.update(block)
        if block:
            gamma.append(block)

    # Gamma': reversed left-to-right preorder over every variable node
    seq: list[str] = []

    def walk(i: int):
        seq.append(prims[i].output)
        for x in prims[i].inputs:
            if isinstance(x, str):
                if x in b.producer and prims[b.producer[x]].output == x and x.startswith("α"):
                    walk(b.producer[x])
                else:
                    seq.append(x)

    walk(root)
    gamma_prime = tuple((v,) for v in reversed(list(dict.fromkeys(seq))))

    return Decomposition(c, prims, fresh, init, root, tuple(b.kids), tuple(omega),
                         tuple(gamma), gamma_prime, node_count(c))


def _preorder(root: int, kids, reverse: bool) -> list[int]:
    out = []
    stack = [root]
    while stack:
        i = stack.pop()
        out.append(i)
        ch = kids[i]
        stack.extend(ch if reverse else reversed(ch))
    return out


@dataclass(frozen=True)
class PrimitiveProblem:
    """Flattened system: original variables first, then every fresh
    variable renamed ``c<i>.α<j>`` after its source constraint."""

    variables: tuple[str, ...]
    original: tuple[str, ...]
    domains: Box
    primitives: tuple[Primitive, ...]
    source: tuple[int, ...]
    decompositions: tuple[Decomposition, ...]
    offsets: tuple[int, ...]  # index of each constraint's first primitive


def fresh_name(ci: int, name: str) -> str:
    return f"c{ci}.{name}"


def decompose_problem(p: Problem) -> PrimitiveProblem:
    prims: list[Primitive] = []
    source: list[int] = []
    offsets: list[int] = []
    names = list(p.variables)
    doms = dict(p.domains)
    decs = []
    for ci, c in enumerate(p.constraints):
        dec = decompose(c)
        decs.append(dec)
        mapping = {v: fresh_name(ci, v) for v in dec.fresh}
        offsets.append(len(prims))
        for q in dec.primitives:
            prims.append(q.rename(mapping))
            source.append(ci)
        for v in dec.fresh:
            names.append(mapping[v])
            doms[mapping[v]] = dec.init[v]
    return PrimitiveProblem(tuple(names), tuple(p.variables), Box(doms), tuple(prims),
                            tuple(source), tuple(decs), tuple(offsets))


def dump_problem(p: Problem) -> str:
    return "\n\n".join(decompose(c).dump() for c in p.constraints) + "\n"
