"""Branch-and-prune search for all solution boxes of a system."""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

from .box import Box
from .expr import Problem, evaluate
from .interval import Interval, sub
from .propagate import Compiled, Method, Stats, Status


@dataclass
class SolveResult:
    solutions: list[Box]
    stats: Stats
    status: str  # "complete", "timeout" or "max-boxes"
    raw_boxes: int = 0  # emitted boxes before merging
    nodes: int = 0  # search nodes visited
    method: str = ""
    eps: float = 0.0
    extras: dict = field(default_factory=dict)

    @property
    def complete(self) -> bool:
        return self.status == "complete"


def _width_ok(lo, hi, i: int, eps: float, add_up) -> bool:
    return add_up(hi[i], -lo[i]) <= eps


def _midpoint(l: float, h: float, maxf: float) -> float:
    if l == -math.inf and h == math.inf:
        return 0.0
    if l == -math.inf:
        return -maxf if h > -maxf else h
    if h == math.inf:
        return maxf if l < maxf else l
    m = 0.5 * l + 0.5 * h
    return min(max(m, l), h)


def branch_and_prune(p: Problem, method: Method | str = Method.HC4, eps: float = 1e-8,
                     d0: Box | None = None, *, timeout: float | None = None,
                     max_boxes: int | None = None, merge: bool = True,
                     incremental: bool = True,
                     kernel=None) -> SolveResult:
    """All boxes of width at most ``eps`` that may contain a solution.

    Depth-first, left half first. Variables are split round-robin at the
    midpoint, skipping those already narrower than ``eps``. After a split
    only the constraints on the split variable seed the next propagation.
    Emitted boxes that touch are merged into their hull when ``merge``.
    """
    if not eps > 0:
        raise ValueError("eps must be positive")
    method = Method(method)
    comp = Compiled(p, kernel)
    k = comp.kernel
    add_up = k.add_up
    n = comp.n_orig
    stats = Stats()
    t0 = time.perf_counter()
    deadline = time.monotonic() + timeout if timeout else 0.0
    lo, hi = comp.arrays(d0)
    emitted: list[tuple[list, list]] = []
    status = "complete"
    nodes = 0
    # stack entries: (lo, hi, seeds, next variable to try)
    stack = [(lo, hi, None, 0)]
    while stack:
        lo, hi, seeds, start = stack.pop()
        nodes += 1
        if any(lo[i] > hi[i] for i in range(n)):
            continue
        st = comp.run(lo, hi, method, seeds=seeds if incremental else None,
                      deadline=deadline, stats=stats)
        if st is Status.EMPTY:
            continue
        if st is Status.TIMEOUT:
            status = "timeout"
            break
        split = -1
        for j in range(n):
            i = (start + j) % n
            if not _width_ok(lo, hi, i, eps, add_up):
                m = _midpoint(lo[i], hi[i], k.MAXF)
                if lo[i] < m < hi[i]:
                    split = i
                    break
        if split < 0:
            emitted.append((list(lo[:n]), list(hi[:n])))
            if max_boxes is not None and len(emitted) >= max_boxes:
                status = "max-boxes"
                break
            continue
        left_hi = hi[:]
        left_hi[split] = m
        right_lo = lo[:]
        right_lo[split] = m
        nxt = (split + 1) % n
        # fresh variables keep their narrowed domains; they are sound for
        # both halves (HC4 resets them on every revise anyway)
        stack.append((right_lo, hi[:], [split], nxt))
        stack.append((lo[:], left_hi, [split], nxt))
        if deadline and time.monotonic() > deadline:
            status = "timeout"
            break
    stats.wall_time = time.perf_counter() - t0
    boxes = merge_adjacent(emitted) if merge else emitted
    names = p.variables
    sols = [Box({names[i]: Interval._make(l[i], h[i]) for i in range(n)}) for l, h in boxes]
    return SolveResult(sols, stats, status, raw_boxes=len(emitted), nodes=nodes,
                       method=method.value, eps=eps)


def _touch(a_lo, a_hi, b_lo, b_hi) -> bool:
    for al, ah, bl, bh in zip(a_lo, a_hi, b_lo, b_hi):
        if al > math.nextafter(bh, math.inf) or bl > math.nextafter(ah, math.inf):
            return False
    return True


def merge_adjacent(boxes: list[tuple[list, list]]) -> list[tuple[list, list]]:
    """Group boxes that touch (within one ulp per bound), transitively, and
    return the hull of each group in order of first appearance."""
    parent = list(range(len(boxes)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(boxes)):
        for j in range(i):
            if find(i) != find(j) and _touch(*boxes[i], *boxes[j]):
                parent[find(i)] = find(j)
    groups: dict[int, tuple[list, list]] = {}
    for i, (l, h) in enumerate(boxes):
        r = find(i)
        if r not in groups:
            groups[r] = (list(l), list(h))
        else:
            gl, gh = groups[r]
            for k in range(len(l)):
                gl[k] = min(gl[k], l[k])
                gh[k] = max(gh[k], h[k])
    return list(groups.values())


def certify(p: Problem, b: Box) -> bool:
    """True when interval evaluation cannot refute any constraint on ``b``:
    ``lhs - rhs`` evaluates to an interval containing 0."""
    if b.is_empty:
        return False
    for c in p.constraints:
        r = sub(evaluate(c.lhs, b), evaluate(c.rhs, b))
        if r.is_empty or 0.0 not in r:
            return False
    return True

