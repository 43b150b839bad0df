"""Revise operators on boxes.

These are the readable, dictionary-based versions of the operators the
propagation engine runs on flat arrays. They share the projection kernel,
so results agree bit for bit with the engine.

``hc3_revise`` narrows every variable of one primitive once. ``hc4_revise``
runs the two-sweep schedule of a decomposed constraint. ``dbc`` applies
directional bounds consistency along an ordered partition of the variables,
and ``hc3_fixpoint`` computes the greatest common fixed point of all
projections by round-robin iteration.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from ._backend import kernel as _k
from .box import Box
from .decompose import OPCODES, Decomposition, Primitive, decompose
from .expr import Constraint
from .interval import EMPTY, Interval


@dataclass
class Counter:
    projections: int = 0


def _operand_bounds(q: Primitive, slot: int, dom: dict) -> tuple[float, float]:
    x = q.operand(slot) if slot else q.output
    if isinstance(x, str):
        iv = dom[x]
    else:
        iv = x.value
    return iv.lo, iv.hi


def _project(q: Primitive, slot: int, dom: dict) -> tuple[float, float]:
    ol, oh = _operand_bounds(q, 0, dom)
    al, ah = _operand_bounds(q, 1, dom)
    if len(q.inputs) > 1:
        bl, bh = _operand_bounds(q, 2, dom)
    else:
        bl, bh = 0.0, 0.0
    return _k.project_bounds(OPCODES[q.op], slot, ol, oh, al, ah, bl, bh, q.n)


def project(q: Primitive, slot: int, d: Box) -> Interval:
    """Projection of ``q`` onto the operand in ``slot`` (0 = output),
    intersected with that operand's domain in ``d``."""
    if d.is_empty:
        return EMPTY
    return Interval._make(*_project(q, slot, dict(d)))


def hc3_revise_var(q: Primitive, d: Box, x: str) -> Interval:
    """Narrowed domain of ``x`` by every projection of ``q`` onto ``x``."""
    dom = dict(d)
    for s in q.slots:
        if q.operand(s) == x:
            dom[x] = Interval._make(*_project(q, s, dom))
            if dom[x].is_empty:
                return EMPTY
    return dom[x]


def _apply(q: Primitive, slot: int, dom: dict, counter: Counter | None) -> bool:
    if counter is not None:
        counter.projections += 1
    t = q.operand(slot)
    l, h = _project(q, slot, dom)
    if l > h:
        return False
    dom[t] = Interval._make(l, h)
    return True


def hc3_revise(q: Primitive, d: Box, counter: Counter | None = None) -> Box:
    """One pass of projections: variable inputs left to right, then output."""
    if d.is_empty:
        return d
    dom = dict(d)
    for s in q.slots:
        if not _apply(q, s, dom, counter):
            return Box.empty(d)
    return Box(dom)


def hc4_revise(c: Constraint | Decomposition, d: Box, *, full: bool = False,
               counter: Counter | None = None) -> Box:
    """Forward evaluation then backward projection over the constraint tree.

    Fresh variables start from their initial domains (any value in ``d`` is
    ignored). With ``full`` the result keeps them; otherwise only the keys of
    ``d`` are returned.
    """
    dec = c if isinstance(c, Decomposition) else decompose(c)
    if d.is_empty:
        return d
    dom = dict(d)
    dom.update(dec.init)
    for i, s in dec.omega:
        if not _apply(dec.primitives[i], s, dom, counter):
            return Box.empty(dom if full else d)
    out = Box(dom)
    return out if full else out.restrict(d)


def dbc(primitives: Sequence[Primitive], partition: Sequence[Iterable[str]], d: Box,
        counter: Counter | None = None) -> Box:
    """Directional bounds consistency along an ordered partition.

    Blocks are handled last to first. At block ``i``, each primitive that
    contains the whole block and has no variable in a later block is
    projected onto its variables of earlier blocks.
    """
    blocks = [tuple(b) for b in partition]
    rank = {v: i for i, block in enumerate(blocks) for v in block}
    if d.is_empty:
        return d
    dom = dict(d)
    for i in range(len(blocks) - 1, -1, -1):
        for q in primitives:
            scope = q.scope
            if max(rank[v] for v in scope) != i or not set(blocks[i]) <= set(scope):
                continue
            for s in q.slots:
                if rank[q.operand(s)] < i and not _apply(q, s, dom, counter):
                    return Box.empty(d)
    return Box(dom)


def verify_directional(primitives: Sequence[Primitive], partition: Sequence[Iterable[str]],
                       d: Box) -> bool:
    """True when ``d`` is directionally bounds consistent w.r.t. the order
    induced by ``partition`` (earlier block = smaller): projecting any
    primitive onto a minimal variable of its scope leaves ``d`` unchanged."""
    if d.is_empty:
        return True
    rank = {v: i for i, block in enumerate(partition) for v in block}
    dom = dict(d)
    for q in primitives:
        low = min(rank[v] for v in q.scope)
        for s in q.slots:
            t = q.operand(s)
            if rank[t] == low and _project(q, s, dom) != (dom[t].lo, dom[t].hi):
                return False
    return True


def hc3_fixpoint(primitives: Sequence[Primitive], d: Box,
                 counter: Counter | None = None, max_rounds: int | None = None) -> Box:
    """Greatest common fixed point of every projection, by round-robin.

    Sweeps all primitives and slots until a full sweep changes nothing.
    Independent of the worklist engine; meant as a reference.
    """
    dom = dict(d)
    if d.is_empty:
        return d
    rounds = 0
    while True:
        changed = False
        for q in primitives:
            for s in q.slots:
                t = q.operand(s)
                before = dom[t]
                if not _apply(q, s, dom, counter):
                    return Box.empty(d)
                if dom[t] != before:
                    changed = True
        rounds += 1
        if not changed or (max_rounds is not None and rounds >= max_rounds):
            return Box(dom)


def is_hc3_consistent(primitives: Sequence[Primitive], d: Box) -> bool:
    """No single projection of any primitive narrows ``d``."""
    if d.is_empty:
        return True
    dom = dict(d)
    for q in primitives:
        for s in q.slots:
            t = q.operand(s)
            if _project(q, s, dom) != (dom[t].lo, dom[t].hi):
                return False
    return True
