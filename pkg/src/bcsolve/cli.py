"""Command-line interface.

Exit codes: 0 success, 1 inconsistent system (or failed verification),
2 usage or parse error, 3 timeout.
"""

from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import _backend
from .bench import FAMILIES, HEADER, RATIO_HEADER, BenchSpec, generate, run_suite, to_csv
from .decompose import dump_problem
from .expr import ParseError, fold_problem, is_admissible, parse, problem_to_text
from .propagate import METHODS, Compiled, Method, Stats, Status, sbox_revise
from .revise import hc4_revise, is_hc3_consistent, verify_directional
from .solve import branch_and_prune

EXIT_OK, EXIT_INCONSISTENT, EXIT_USAGE, EXIT_TIMEOUT = 0, 1, 2, 3


def _positive(text: str) -> float:
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def _nonneg(text: str) -> float:
    x = float(text)
    if x < 0:
        raise argparse.ArgumentTypeError("must be >= 0")
    return x


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}")


def _method_list(text: str) -> list[str]:
    ms = [t.strip() for t in text.split(",") if t.strip()]
    bad = [m for m in ms if m not in METHODS]
    if bad:
        raise argparse.ArgumentTypeError(f"unknown method(s) {bad}; choose from {','.join(METHODS)}")
    return ms


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="bcsolve",
                                 description="Interval bounds-consistency solver.")
    ap.add_argument("--kernel", choices=["auto", "python", "compiled"], default="auto",
                    help="arithmetic kernel (default: compiled when available)")
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="find all solution boxes")
    s.add_argument("file", help="problem file ('-' for stdin)")
    s.add_argument("--method", choices=METHODS, default="hc4")
    s.add_argument("--eps", type=_positive, default=1e-8, help="box width target (default 1e-8)")
    s.add_argument("--timeout", type=_nonneg, default=0.0, help="seconds, 0 = none")
    s.add_argument("--max-boxes", type=int, default=None)
    s.add_argument("--no-merge", action="store_true", help="report boxes without merging neighbours")
    s.add_argument("--fold-constants", action="store_true")
    s.add_argument("--dump-decomposition", action="store_true",
                   help="print the decomposition before solving")
    s.add_argument("--seed", type=int, default=None, help="accepted and ignored (search is deterministic)")

    pr = sub.add_parser("propagate", help="print the bounds-consistent box")
    pr.add_argument("file")
    pr.add_argument("--method", choices=METHODS, default="hc4")
    pr.add_argument("--timeout", type=_nonneg, default=0.0)
    pr.add_argument("--fold-constants", action="store_true")

    v = sub.add_parser("verify", help="propagate, then check quiescence and directional consistency")
    v.add_argument("file")
    v.add_argument("--method", choices=METHODS, default="hc4")
    v.add_argument("--fold-constants", action="store_true")

    d = sub.add_parser("dump", help="print primitive decompositions and revise orders")
    d.add_argument("file")
    d.add_argument("--fold-constants", action="store_true")

    g = sub.add_parser("generate", help="print a benchmark instance in the modeling language")
    g.add_argument("family", choices=sorted(FAMILIES))
    g.add_argument("n", type=int)

    b = sub.add_parser("bench", help="solve benchmark families and write CSV")
    b.add_argument("--family", action="append", choices=sorted(FAMILIES), required=True,
                   help="repeatable")
    b.add_argument("--sizes", type=_int_list, required=True, help="e.g. 4,6,8")
    b.add_argument("--methods", type=_method_list, default=list(METHODS))
    b.add_argument("--eps", type=_positive, default=1e-8)
    b.add_argument("--timeout", type=_nonneg, default=0.0, help="per run, 0 = none")
    b.add_argument("--out", help="runs CSV (default stdout)")
    b.add_argument("--ratios-out", help="projection-ratio CSV")
    b.add_argument("--jobs", type=int, default=1, help="parallel worker processes")
    return ap


def _load(path: str, fold: bool):
    text = sys.stdin.read() if path == "-" else open(path, encoding="utf-8").read()
    p = parse(text)
    return fold_problem(p) if fold else p


def _trailer(out, status: str, stats: Stats, **extra) -> None:
    print(f"status={status}", file=out)
    for k, v in extra.items():
        print(f"{k}={v}", file=out)
    print(f"projections={stats.projections}", file=out)
    print(f"revise_calls={stats.revise_calls}", file=out)
    print(f"enqueues={stats.enqueues}", file=out)
    print(f"seconds={stats.wall_time:.6f}", file=out)


def cmd_solve(args, kernel) -> int:
    p = _load(args.file, args.fold_constants)
    if args.dump_decomposition:
        print(dump_problem(p))
    r = branch_and_prune(p, args.method, args.eps, timeout=args.timeout or None,
                         max_boxes=args.max_boxes, merge=not args.no_merge, kernel=kernel)
    for i, box in enumerate(r.solutions, 1):
        print(f"solution {i}: " + " ".join(f"{k}={v}" for k, v in box.items()))
    _trailer(sys.stdout, r.status, r.stats, method=r.method, eps=repr(r.eps),
             solutions=len(r.solutions), raw_boxes=r.raw_boxes, nodes=r.nodes,
             kernel=_backend.name_of(kernel))
    if r.status == "timeout":
        return EXIT_TIMEOUT
    if not r.solutions and r.status == "complete":
        return EXIT_INCONSISTENT
    return EXIT_OK


def _fixpoint(p, method, kernel, timeout=0.0):
    import time

    comp = Compiled(p, kernel)
    lo, hi = comp.arrays()
    stats = Stats()
    deadline = time.monotonic() + timeout if timeout else 0.0
    st = comp.run(lo, hi, method, deadline=deadline, stats=stats)
    return comp, lo, hi, st, stats


def cmd_propagate(args, kernel) -> int:
    p = _load(args.file, args.fold_constants)
    comp, lo, hi, st, stats = _fixpoint(p, args.method, kernel, args.timeout)
    if st is Status.EMPTY:
        print("empty")
    else:
        print(comp.box(lo, hi).format())
    _trailer(sys.stdout, st.value, stats, method=args.method)
    return {Status.OK: EXIT_OK, Status.EMPTY: EXIT_INCONSISTENT, Status.TIMEOUT: EXIT_TIMEOUT}[st]


def cmd_verify(args, kernel) -> int:
    p = _load(args.file, args.fold_constants)
    method = Method(args.method)
    comp, lo, hi, st, _ = _fixpoint(p, method, kernel)
    if st is Status.EMPTY:
        print("inconsistent: propagation emptied the box")
        return EXIT_INCONSISTENT
    box = comp.box(lo, hi)
    full = comp.box(lo, hi, full=True)
    ok_all = True
    for ci, (c, dec) in enumerate(zip(p.constraints, comp.flat.decompositions)):
        checks = []
        scope_box = box
        if method in (Method.HC3, Method.HC3SB):
            base = comp.flat.offsets[ci]
            prims = comp.flat.primitives[base:base + dec.p]
            checks.append(("quiescent", is_hc3_consistent(prims, full)))
        elif method is Method.HC4:
            checks.append(("quiescent", hc4_revise(dec, scope_box) == scope_box))
        else:
            checks.append(("quiescent", sbox_revise(c, scope_box, "hc4") == scope_box))
        if is_admissible(c):
            ext = hc4_revise(dec, scope_box, full=True)
            checks.append(("directional", verify_directional(dec.primitives, dec.gamma_prime, ext)))
        ok = all(r for _, r in checks)
        ok_all &= ok
        detail = " ".join(f"{name}={'yes' if r else 'no'}" for name, r in checks)
        print(f"{'PASS' if ok else 'FAIL'} constraint {ci + 1}: {c}  [{detail}]")
    return EXIT_OK if ok_all else EXIT_INCONSISTENT


def cmd_dump(args, kernel) -> int:
    p = _load(args.file, args.fold_constants)
    sys.stdout.write(dump_problem(p))
    return EXIT_OK


def cmd_generate(args, kernel) -> int:
    sys.stdout.write(problem_to_text(generate(args.family, args.n)))
    return EXIT_OK


def _run_spec(spec: BenchSpec, kernel_name: str):
    return run_suite([spec], kernel=_backend.load(kernel_name))


def cmd_bench(args, kernel) -> int:
    timeout = args.timeout or None
    specs = [BenchSpec(f, n, args.methods, args.eps, timeout)
             for f in args.family for n in args.sizes]
    progress = lambda row: print(  # noqa: E731
        f"{row['family']} n={row['n']} {row['method']}: {row['status']} "
        f"solutions={row['solutions']} projections={row['projections']} "
        f"seconds={row['seconds']}", file=sys.stderr)
    if args.jobs > 1:
        name = _backend.name_of(kernel)
        rows, ratios = [], []
        with ProcessPoolExecutor(args.jobs) as ex:
            for res in ex.map(_run_spec, specs, [name] * len(specs)):
                for row in res.rows:
                    progress(row)
                rows += res.rows
                ratios += res.ratios
    else:
        res = run_suite(specs, kernel=kernel, progress=progress)
        rows, ratios = res.rows, res.ratios
    text = to_csv(rows, HEADER)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        sys.stdout.write(text)
    if args.ratios_out:
        with open(args.ratios_out, "w", encoding="utf-8") as f:
            f.write(to_csv(ratios, RATIO_HEADER))
    return EXIT_TIMEOUT if any(r["status"] == "timeout" for r in rows) else EXIT_OK


COMMANDS = {"solve": cmd_solve, "propagate": cmd_propagate, "verify": cmd_verify,
            "dump": cmd_dump, "generate": cmd_generate, "bench": cmd_bench}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        kernel = _backend.kernel if args.kernel == "auto" else _backend.load(args.kernel)
    except ImportError:
        print("error: compiled kernel is not built", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, kernel)
    except ParseError as e:
        print(f"error: {getattr(args, 'file', '')}:{e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
