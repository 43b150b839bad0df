"""Benchmark families and the experiment harness.

Every generator builds the model as text and parses it, so generated
problems are ordinary modeling-language programs (``problem_to_text``
prints them back).
"""

from __future__ import annotations

import csv
import io
import statistics
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .expr import Problem, node_count, parse
from .propagate import METHODS
from .solve import branch_and_prune

BIG = "1e8"


def _decls(names: Iterable[str], lo: str, hi: str) -> list[str]:
    return [f"var {v} in [{lo},{hi}];" for v in names]


def bratu(n: int) -> Problem:
    """Discretised Bratu problem: n interior points plus the two boundary
    variables fixed to 0, so n+2 equations."""
    if n < 1:
        raise ValueError("bratu needs n >= 1")
    xs = [f"x{k}" for k in range(n + 2)]
    lines = [f"var x0 in [0,0];"]
    lines += _decls(xs[1:-1], f"-{BIG}", BIG)
    lines.append(f"var {xs[-1]} in [0,0];")
    h2 = (n + 1) ** 2
    for k in range(1, n + 1):
        lines.append(f"{xs[k - 1]} - 2*{xs[k]} + {xs[k + 1]} + exp({xs[k]})/{h2} = 0;")
    lines.append("x0 = 0;")
    lines.append(f"{xs[-1]} = 0;")
    return parse("\n".join(lines))


def broyden_index_set(n: int, k: int) -> list[int]:
    """J_k = {j != k : max(1, k-5) <= j <= min(n, k+1)}."""
    return [j for j in range(max(1, k - 5), min(n, k + 1) + 1) if j != k]


def broyden_banded(n: int) -> Problem:
    if n < 2:
        raise ValueError("broyden_banded needs n >= 2")
    lines = _decls((f"x{k}" for k in range(1, n + 1)), f"-{BIG}", BIG)
    for k in range(1, n + 1):
        rhs = "".join(f" - x{j}*(1 + x{j})" for j in broyden_index_set(n, k))
        lines.append(f"x{k}*(2 + 5*x{k}^2) + 1{rhs} = 0;")
    return parse("\n".join(lines))


def more_cosnard(n: int, second_exponent: int = 3) -> Problem:
    """Discretised integral equation with t_j = j/(n+1).

    ``second_exponent`` sets the power in the second sum (3 is the standard
    problem; 2 gives the variant with a squared second sum).
    """
    if n < 2:
        raise ValueError("more_cosnard needs n >= 2")
    h = n + 1
    lines = _decls((f"x{k}" for k in range(1, n + 1)), f"-{BIG}", "0")

    def term(j: int, coef: str, e: int) -> str:
        return f"{coef}*(x{j} + {j}/{h} + 1)^{e}"

    for k in range(1, n + 1):
        first = " + ".join(term(j, f"{j}/{h}", 3) for j in range(1, k + 1))
        body = f"(1 - {k}/{h})*({first})"
        if k < n:
            second = " + ".join(term(j, f"(1 - {j}/{h})", second_exponent)
                                for j in range(k + 1, n + 1))
            body += f" + {k}/{h}*({second})"
        lines.append(f"x{k} + 0.5*({body}) = 0;")
    return parse("\n".join(lines))


def feigenbaum(n: int) -> Problem:
    """Cyclic quadratic map: -3.84 x_k^2 + 3.84 x_k - x_{k+1} = 0."""
    if n < 2:
        raise ValueError("feigenbaum needs n >= 2")
    lines = _decls((f"x{k}" for k in range(1, n + 1)), "0", "100")
    for k in range(1, n + 1):
        nxt = k % n + 1
        lines.append(f"-3.84*x{k}^2 + 3.84*x{k} - x{nxt} = 0;")
    return parse("\n".join(lines))


def feigenbaum_factored(n: int) -> Problem:
    """Same map with each variable once per constraint:
    0.96 - 3.84 (x_k - 0.5)^2 = x_{k+1}."""
    if n < 2:
        raise ValueError("feigenbaum_factored needs n >= 2")
    lines = _decls((f"x{k}" for k in range(1, n + 1)), "0", "100")
    for k in range(1, n + 1):
        nxt = k % n + 1
        lines.append(f"0.96 - 3.84*(x{k} - 0.5)^2 = x{nxt};")
    return parse("\n".join(lines))


FAMILIES = {
    "bratu": bratu,
    "broyden_banded": broyden_banded,
    "more_cosnard": more_cosnard,
    "feigenbaum": feigenbaum,
    "feigenbaum_factored": feigenbaum_factored,
}


def generate(family: str, n: int) -> Problem:
    try:
        return FAMILIES[family](n)
    except KeyError:
        raise ValueError(f"unknown family {family!r}; choose from {', '.join(FAMILIES)}") from None


def mean_nodes(p: Problem) -> float:
    """Average node count per constraint."""
    return statistics.fmean(node_count(c) for c in p.constraints)


@dataclass
class BenchSpec:
    family: str
    n: int
    methods: Sequence[str] = METHODS
    eps: float = 1e-8
    timeout: float | None = None


HEADER = ["family", "n", "method", "status", "solutions", "projections",
          "revise_calls", "enqueues", "seconds"]
RATIO_HEADER = ["family", "n", "nodes", "pair", "ratio"]
RATIO_PAIRS = (("hc3", "hc4"), ("hc3sb", "hc4sb"))


@dataclass
class SuiteResult:
    rows: list[dict] = field(default_factory=list)
    ratios: list[dict] = field(default_factory=list)


def run_one(spec: BenchSpec, method: str, kernel=None) -> dict:
    p = generate(spec.family, spec.n)
    r = branch_and_prune(p, method, spec.eps, timeout=spec.timeout, kernel=kernel)
    return {"family": spec.family, "n": spec.n, "method": method, "status": r.status,
            "solutions": len(r.solutions), "projections": r.stats.projections,
            "revise_calls": r.stats.revise_calls, "enqueues": r.stats.enqueues,
            "seconds": round(r.stats.wall_time, 6)}


def run_suite(specs: Iterable[BenchSpec], kernel=None, progress=None) -> SuiteResult:
    """Solve every (family, n, method) and derive projection ratios for the
    HC3/HC4 pairs. Timed-out runs are recorded, not raised; ratios are
    only computed when both runs completed."""
    out = SuiteResult()
    for spec in specs:
        by_method = {}
        for m in spec.methods:
            row = run_one(spec, m, kernel)
            out.rows.append(row)
            by_method[m] = row
            if progress:
                progress(row)
        nodes = mean_nodes(generate(spec.family, spec.n))
        for a, b in RATIO_PAIRS:
            ra, rb = by_method.get(a), by_method.get(b)
            if not ra or not rb or ra["status"] != "complete" or rb["status"] != "complete":
                continue
            if rb["projections"] == 0:
                continue
            out.ratios.append({"family": spec.family, "n": spec.n, "nodes": round(nodes, 3),
                               "pair": f"{a}/{b}",
                               "ratio": round(ra["projections"] / rb["projections"], 6)})
    return out


def to_csv(rows: list[dict], header: Sequence[str]) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(header), lineterminator="\n")
    w.writeheader()
    w.writerows(rows)
    return buf.getvalue()
