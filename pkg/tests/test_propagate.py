import math

import pytest

from helpers import quadratic_problem
from bcsolve.bench import bratu, broyden_banded, feigenbaum, feigenbaum_factored, more_cosnard
from bcsolve.decompose import decompose
from bcsolve.expr import parse
from bcsolve.interval import Interval
from bcsolve.propagate import (METHODS, Compiled, Method, Stats, Status, bounds_consistency,
                               propagate, sbox_revise)
from bcsolve.revise import hc4_revise, is_hc3_consistent

XYZ = "var x in [0,10]; var y in [0,10]; var z in [0,5]; x + y = z;"


def close(a, b):
    return all(x == y or math.nextafter(x, y) == y for x, y in ((a.lo, b.lo), (a.hi, b.hi)))


@pytest.mark.parametrize("method", METHODS)
def test_single_primitive_fixed_point(method):
    r = bounds_consistency(parse(XYZ), method)
    assert all(r[v] == Interval(0, 5) for v in "xyz")


def test_hc3_equals_hc4_on_admissible_constraint():
    p = quadratic_problem()
    assert bounds_consistency(p, "hc3") == bounds_consistency(p, "hc4")


def test_engine_matches_reference_revise():
    p = quadratic_problem()
    assert bounds_consistency(p, "hc4") == hc4_revise(p.constraints[0], p.domains)


@pytest.mark.parametrize("p", [feigenbaum(4), bratu(5), feigenbaum_factored(4)],
                         ids=["feigenbaum4", "bratu5", "factored4"])
def test_strategies_agree(p):
    boxes = [bounds_consistency(p, m) for m in METHODS]
    for b in boxes[1:]:
        assert all(close(boxes[0][v], b[v]) for v in p.variables)


@pytest.mark.parametrize("p", [bratu(3), feigenbaum(3), broyden_banded(3)],
                         ids=["bratu3", "feigenbaum3", "broyden3"])
@pytest.mark.parametrize("method", METHODS)
def test_fifo_and_lifo_reach_same_box(p, method):
    assert bounds_consistency(p, method) == bounds_consistency(p, method, lifo=True)


@pytest.mark.parametrize("method", METHODS)
def test_quiescent_after_return(method):
    p = feigenbaum(3)
    comp = Compiled(p)
    lo, hi = comp.arrays()
    assert comp.run(lo, hi, method) is Status.OK
    if method in ("hc3", "hc3sb"):
        assert is_hc3_consistent(comp.flat.primitives, comp.box(lo, hi, full=True))
    else:
        b = comp.box(lo, hi)
        for c in p.constraints:
            sub = b.restrict(c.scope)
            assert sbox_revise(c, sub, "hc4") == sub


def test_inconsistent_problem_is_empty():
    p = parse("var x in [0,1]; x = 2;")
    box, status = propagate(p, "hc4")
    assert status is Status.EMPTY and box.is_empty


def test_timeout_reports_status():
    box, status = propagate(more_cosnard(8), "hc3", timeout=1e-5)
    assert status in (Status.TIMEOUT, Status.OK)
    assert not box.is_empty
    assert box.issubset(more_cosnard(8).domains)


def test_stats_accumulate():
    s = Stats()
    bounds_consistency(quadratic_problem(), "hc4", stats=s)
    assert s.projections == 10 and s.revise_calls == 1 and s.enqueues == 1
    bounds_consistency(quadratic_problem(), "hc4", stats=s)
    assert s.projections == 20


def test_sbox_admissible_needs_two_sweeps():
    p = quadratic_problem()
    c = p.constraints[0]
    omega = len(decompose(c).omega)
    s = Stats()
    r = sbox_revise(c, p.domains, "hc4", s)
    assert s.projections == 2 * omega
    s = Stats()
    assert sbox_revise(c, r, "hc4", s) == r
    assert s.projections == omega


def test_sbox_contracts_square():
    p = parse("var x in [-3,3]; x^2 - 4 = 0;")
    for inner in ("hc3", "hc4"):
        assert sbox_revise(p.constraints[0], p.domains, inner)["x"] == Interval(-2, 2)


def test_sbox_rejects_unknown_inner():
    p = quadratic_problem()
    with pytest.raises(ValueError):
        sbox_revise(p.constraints[0], p.domains, "ac3")


def test_method_enum():
    assert METHODS == ("hc3", "hc3sb", "hc4", "hc4sb")
    assert Method("hc4sb").code == 3
    with pytest.raises(ValueError):
        Method("hc5")


def test_bounds_respect_initial_box():
    p = more_cosnard(4)
    r = bounds_consistency(p, "hc4")
    assert r.issubset(p.domains)
    assert all(iv.hi <= 0 for iv in r.values())
