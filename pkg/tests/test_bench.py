import csv
import io

import pytest

from bcsolve.bench import (FAMILIES, HEADER, RATIO_HEADER, BenchSpec, bratu, broyden_banded,
                           broyden_index_set, feigenbaum, feigenbaum_factored, generate,
                           mean_nodes, more_cosnard, run_one, run_suite, to_csv)
from bcsolve.expr import is_admissible, iter_nodes, node_count, parse, problem_to_text
from bcsolve.interval import Interval


def test_bratu_sizes_and_domains():
    p = bratu(3)
    assert len(p.constraints) == 5
    assert p.variables == ("x0", "x1", "x2", "x3", "x4")
    assert p.domains["x0"] == Interval(0, 0) == p.domains["x4"]
    assert p.domains["x2"] == Interval(-1e8, 1e8)


def test_bratu_interior_shape_constant_in_n():
    counts = {node_count(c) for n in (3, 6, 10) for c in bratu(n).constraints[:n]}
    assert counts == {14}


def test_bratu_rejects_bad_size():
    with pytest.raises(ValueError):
        bratu(0)


def test_broyden_index_sets():
    assert broyden_index_set(4, 1) == [2]
    assert broyden_index_set(4, 4) == [1, 2, 3]
    assert broyden_index_set(10, 8) == [3, 4, 5, 6, 7, 9]


def test_broyden_node_counts_bounded():
    small = {node_count(c) for c in broyden_banded(12).constraints}
    large = {node_count(c) for c in broyden_banded(30).constraints}
    assert small == large
    assert min(large) == 18 and max(large) == 48


def test_more_cosnard_structure():
    p = more_cosnard(4)
    assert len(p.constraints) == 4
    assert all(iv == Interval(-1e8, 0) for iv in p.domains.values())
    assert mean_nodes(more_cosnard(4)) < mean_nodes(more_cosnard(6)) < mean_nodes(more_cosnard(8))


def test_more_cosnard_points():
    text = problem_to_text(more_cosnard(4))
    for j in range(1, 5):
        assert f"{j} / 5" in text
    ts = [j / 5 for j in range(1, 5)]
    assert ts == [0.2, 0.4, 0.6, 0.8]


def test_more_cosnard_second_exponent_flag():
    cubes = sum(1 for c in more_cosnard(4).constraints for e in iter_nodes(c.lhs)
                if getattr(e, "n", None) == 2)
    squares = sum(1 for c in more_cosnard(4, second_exponent=2).constraints
                  for e in iter_nodes(c.lhs) if getattr(e, "n", None) == 2)
    assert cubes == 0 and squares > 0


def test_feigenbaum_forms():
    p, q = feigenbaum(5), feigenbaum_factored(5)
    assert len(p.constraints) == len(q.constraints) == 5
    assert not any(is_admissible(c) for c in p.constraints)
    assert all(is_admissible(c) for c in q.constraints)
    assert {node_count(c) for n in (2, 5, 9) for c in feigenbaum(n).constraints} == {13}
    assert p.domains["x3"] == Interval(0, 100)


def test_feigenbaum_closes_the_cycle():
    c = feigenbaum(3).constraints[-1]
    assert set(c.scope) == {"x3", "x1"}


@pytest.mark.parametrize("family", sorted(FAMILIES))
def test_generate_round_trip(family):
    p = generate(family, 3)
    assert parse(problem_to_text(p)).constraints == p.constraints


def test_generate_unknown_family():
    with pytest.raises(ValueError, match="unknown family"):
        generate("rosenbrock", 3)


def test_empty_suite_is_header_only():
    res = run_suite([])
    assert to_csv(res.rows, HEADER) == ",".join(HEADER) + "\n"
    assert res.ratios == []


def test_suite_rows_and_ratios():
    res = run_suite([BenchSpec("feigenbaum_factored", 2, ("hc3", "hc4", "hc3sb", "hc4sb"))])
    assert [r["method"] for r in res.rows] == ["hc3", "hc4", "hc3sb", "hc4sb"]
    assert {r["pair"] for r in res.ratios} == {"hc3/hc4", "hc3sb/hc4sb"}
    rows = list(csv.DictReader(io.StringIO(to_csv(res.rows, HEADER))))
    assert list(rows[0]) == HEADER
    assert list(csv.DictReader(io.StringIO(to_csv(res.ratios, RATIO_HEADER))).fieldnames) == RATIO_HEADER
    by = {r["method"]: r for r in res.rows}
    ratio = next(r for r in res.ratios if r["pair"] == "hc3/hc4")["ratio"]
    assert ratio == round(by["hc3"]["projections"] / by["hc4"]["projections"], 6)


def test_timeout_is_recorded_not_raised():
    row = run_one(BenchSpec("more_cosnard", 8, timeout=1e-3), "hc3")
    assert row["status"] == "timeout"
    res = run_suite([BenchSpec("more_cosnard", 8, ("hc3", "hc4"), timeout=1e-3)])
    assert res.ratios == []


def test_header_matches_cli_contract():
    assert HEADER == ["family", "n", "method", "status", "solutions", "projections",
                      "revise_calls", "enqueues", "seconds"]
