"""Worklist propagation with the four revise strategies.

``hc3`` propagates over the flattened primitive system, ``hc4`` over user
constraints with one two-sweep revise per pop, and the ``sb`` variants
revise each user constraint to its own fixed point before propagating.

The heavy loops live in the kernel (``_backend.kernel``); this module
compiles a :class:`~bcsolve.expr.Problem` into the kernel's flat arrays and
converts boxes in and out.
"""

from __future__ import annotations

import enum
import time
from array import array
from dataclasses import dataclass

from ._backend import kernel as _default_kernel
from .box import Box
from .decompose import OPCODES, PrimitiveProblem, decompose_problem
from .expr import Constraint, Problem, is_admissible
from .interval import Interval


class Method(str, enum.Enum):
    HC3 = "hc3"
    HC3SB = "hc3sb"
    HC4 = "hc4"
    HC4SB = "hc4sb"

    @property
    def code(self) -> int:
        return _CODES[self]


_CODES = {Method.HC3: 0, Method.HC3SB: 1, Method.HC4: 2, Method.HC4SB: 3}
METHODS = tuple(m.value for m in Method)


class Status(str, enum.Enum):
    EMPTY = "empty"
    OK = "ok"
    TIMEOUT = "timeout"


_STATUS = {0: Status.EMPTY, 1: Status.OK, 2: Status.TIMEOUT}


@dataclass
class Stats:
    projections: int = 0
    revise_calls: int = 0
    enqueues: int = 0
    wall_time: float = 0.0

    def add(self, other: Stats) -> None:
        self.projections += other.projections
        self.revise_calls += other.revise_calls
        self.enqueues += other.enqueues
        self.wall_time += other.wall_time

    def as_dict(self) -> dict:
        return {"projections": self.projections, "revise_calls": self.revise_calls,
                "enqueues": self.enqueues, "wall_time": self.wall_time}


class Compiled:
    """A problem compiled to kernel arrays.

    Variables are indexed with the original ones first (in declaration
    order), then every constraint's fresh variables.
    """

    def __init__(self, problem: Problem, kernel=None):
        self.kernel = kernel or _default_kernel
        self.problem = problem
        flat: PrimitiveProblem = decompose_problem(problem)
        self.flat = flat
        index = {v: i for i, v in enumerate(flat.variables)}
        self.index = index
        self.names = flat.variables
        self.n_orig = len(problem.variables)
        op, out, a, b, expo = [], [], [], [], []
        ca_lo, ca_hi, cb_lo, cb_hi = [], [], [], []
        for q in flat.primitives:
            op.append(OPCODES[q.op])
            out.append(index[q.output])
            expo.append(q.n)
            for k, (idx, clo, chi) in enumerate(((a, ca_lo, ca_hi), (b, cb_lo, cb_hi))):
                x = q.inputs[k] if k < len(q.inputs) else None
                if isinstance(x, str):
                    idx.append(index[x])
                    clo.append(0.0)
                    chi.append(0.0)
                else:
                    idx.append(-1)
                    iv = x.value if x is not None else Interval(0.0)
                    clo.append(iv.lo)
                    chi.append(iv.hi)
        con_prims, con_sched, con_fresh, reenqueue = [], [], [], []
        for ci, dec in enumerate(flat.decompositions):
            base = flat.offsets[ci]
            con_prims.append([base + i for i in range(dec.p)])
            con_sched.append([(base + i) * 3 + s for i, s in dec.omega])
            con_fresh.append([index[f"c{ci}.{v}"] for v in dec.fresh])
            reenqueue.append(not is_admissible(dec.constraint))
        fresh_lo = [0.0] * len(index)
        fresh_hi = [0.0] * len(index)
        for v, iv in flat.domains.items():
            i = index[v]
            if i >= self.n_orig:
                fresh_lo[i], fresh_hi[i] = iv.lo, iv.hi
        self.network = self.kernel.Network(
            self.n_orig, len(index), op, out, a, b, expo, ca_lo, ca_hi, cb_lo, cb_hi,
            list(flat.source), con_prims, con_sched, con_fresh, fresh_lo, fresh_hi, reenqueue)

    def arrays(self, d: Box | None = None) -> tuple[array, array]:
        """Kernel buffers for ``d`` over the original variables, with fresh
        variables at their initial domains."""
        d = self.problem.domains if d is None else d
        n = len(self.names)
        lo = array("d", bytes(8 * n))
        hi = array("d", bytes(8 * n))
        for i, v in enumerate(self.problem.variables):
            iv = d[v]
            lo[i], hi[i] = iv.lo, iv.hi
        self.network.init_fresh(lo, hi)
        return lo, hi

    def box(self, lo, hi, full: bool = False) -> Box:
        n = len(self.names) if full else self.n_orig
        if any(lo[i] > hi[i] for i in range(n)):
            return Box.empty(self.names[:n])
        return Box({self.names[i]: Interval._make(lo[i], hi[i]) for i in range(n)})

    def run(self, lo, hi, method: Method | str, seeds=None, lifo: bool = False,
            deadline: float = 0.0, stats: Stats | None = None) -> Status:
        """Propagate in place; counters are added to ``stats``."""
        method = Method(method)
        net = self.network
        net.reset_counters()
        t0 = time.perf_counter()
        st = net.propagate(lo, hi, method.code, seeds, lifo, deadline)
        if stats is not None:
            stats.projections += net.projections
            stats.revise_calls += net.revise_calls
            stats.enqueues += net.enqueues
            stats.wall_time += time.perf_counter() - t0
        return _STATUS[st]


def bounds_consistency(p: Problem, method: Method | str = Method.HC4, d: Box | None = None,
                       stats: Stats | None = None, *, lifo: bool = False,
                       timeout: float | None = None, kernel=None) -> Box:
    """Largest box inside ``d`` that is a common fixed point of the
    strategy's revise operators. Returns the empty box on inconsistency.

    On timeout the current (sound, possibly non-consistent) box is returned
    and ``TimeoutError`` is not raised; check ``propagate`` for status.
    """
    box, _ = propagate(p, method, d, stats, lifo=lifo, timeout=timeout, kernel=kernel)
    return box


def propagate(p: Problem, method: Method | str = Method.HC4, d: Box | None = None,
              stats: Stats | None = None, *, lifo: bool = False,
              timeout: float | None = None, kernel=None) -> tuple[Box, Status]:
    """Like :func:`bounds_consistency` but also returns the status."""
    comp = Compiled(p, kernel)
    lo, hi = comp.arrays(d)
    if any(lo[i] > hi[i] for i in range(comp.n_orig)):
        return Box.empty(p.variables), Status.EMPTY
    deadline = time.monotonic() + timeout if timeout else 0.0
    st = comp.run(lo, hi, method, lifo=lifo, deadline=deadline, stats=stats)
    if st is Status.EMPTY:
        return Box.empty(p.variables), st
    return comp.box(lo, hi), st


def sbox_revise(c: Constraint, d: Box, inner: str = "hc4", stats: Stats | None = None) -> Box:
    """Fixed point of one constraint alone: an inner HC3 worklist over its
    primitives (``inner="hc3"``) or repeated two-sweep revises (``"hc4"``)."""
    if inner not in ("hc3", "hc4"):
        raise ValueError("inner must be 'hc3' or 'hc4'")
    names = tuple(v for v in d)
    p = Problem(names, d, (c,))
    method = Method.HC3SB if inner == "hc3" else Method.HC4SB
    return bounds_consistency(p, method, d, stats)
