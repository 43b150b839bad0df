import math
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given, strategies as st

from bcsolve import _backend
from bcsolve.interval import (EMPTY, ENTIRE, Interval, add, can_split, cos, div, enclose_decimal,
                              exp, hull, intersect, inv_add, inv_cos, inv_exp, inv_mul,
                              inv_pow_even, inv_pow_odd, inv_sqrt, log, midpoint, mul, neg,
                              parse_interval, pow_int, split, sqrt, sub, width)

TRANS_ULPS = _backend.kernel.TRANS_ULPS

finite = st.floats(min_value=-1e6, max_value=1e6, allow_nan=False, allow_infinity=False)


@st.composite
def intervals(draw, elements=finite):
    a, b = draw(elements), draw(elements)
    return Interval(min(a, b), max(a, b))


@st.composite
def interval_and_point(draw, elements=finite):
    iv = draw(intervals(elements))
    t = draw(st.floats(0, 1))
    x = min(max(iv.lo + t * (iv.hi - iv.lo), iv.lo), iv.hi)
    return iv, draw(st.sampled_from([iv.lo, iv.hi, x]))


def F(x):
    return Fraction(x)


# -- fixed examples -----------------------------------------------------------

def test_add_exact_endpoints():
    assert add(Interval(1, 2), Interval(3, 4)) == Interval(4, 6)


def test_add_zero_is_identity():
    assert add(Interval(0, 0), Interval(-3.5, 7.25)) == Interval(-3.5, 7.25)


def test_mul_sign_cases():
    assert mul(Interval(1, 2), Interval(-1, 3)) == Interval(-2, 6)


def test_div_across_zero_is_entire():
    assert div(Interval(1, 1), Interval(-1, 2)) == ENTIRE


def test_div_by_positive():
    assert div(Interval(1, 2), Interval(4, 8)) == Interval(0.125, 0.5)


def test_underflow_rounds_toward_known_sign():
    # a quotient or product that underflows to 0 keeps its sign, so only one side widens
    q = div(Interval(1e-323, 1), Interval(-5, -2))
    assert q.hi == 0 and q.lo == -0.5
    assert mul(Interval(1e-200, 1), Interval(1e-200, 1)).lo == 0
    assert mul(Interval(-1, -1e-200), Interval(1e-200, 1)).hi == 0


def test_pow_int():
    assert pow_int(Interval(-2, 3), 2) == Interval(0, 9)
    assert pow_int(Interval(-2, 3), 3) == Interval(-8, 27)
    assert pow_int(Interval(2, 2), 1) == Interval(2, 2)


def test_pow_rejects_nonpositive_exponent():
    with pytest.raises(ValueError):
        pow_int(Interval(1, 2), 0)


def test_exp_zero_within_two_ulps():
    r = exp(Interval(0, 0))
    assert r.lo <= 1 <= r.hi
    assert r.hi - r.lo <= 2 * math.ulp(1.0)


def test_exp_unit_interval_against_oracle():
    r = exp(Interval(0, 1))
    assert r.lo == 1.0
    with mpmath.workprec(200):
        e = mpmath.e
        tight_hi = math.nextafter(float(e), math.inf) if mpmath.mpf(float(e)) < e else float(e)
        assert r.hi >= tight_hi
    # upper bound is at most the inflation policy away from the tightest float
    steps = 0
    x = tight_hi
    while x < r.hi:
        x = math.nextafter(x, math.inf)
        steps += 1
    assert steps <= TRANS_ULPS


def test_cos_over_half_period():
    r = cos(Interval(0, math.nextafter(math.pi, 4)))
    assert r.lo <= -1 and r.hi >= 1
    assert r == Interval(-1, 1)


def test_cos_wide_interval_clamped():
    assert cos(Interval(-100, 100)) == Interval(-1, 1)


def test_inverse_examples():
    assert inv_add(Interval(0, 5), Interval(0, 10)) == Interval(-10, 5)
    assert inv_pow_even(Interval(4, 9)) == Interval(-3, 3)
    assert inv_exp(Interval(-2, -1)) is EMPTY


def test_inv_pow_even_uses_domain_branch():
    assert inv_pow_even(Interval(4, 9), 2, Interval(0, 10)) == Interval(2, 3)


def test_inv_pow_odd():
    assert inv_pow_odd(Interval(-8, 27), 3) == Interval(-2, 3)


def test_inv_mul_across_zero_keeps_domain_branch():
    # x * [-1, 2] = [1, 1] has x in (-inf, -1] U [0.5, inf)
    assert inv_mul(Interval(1, 1), Interval(-1, 2), Interval(0, 10)) == Interval(0.5, 10)
    assert inv_mul(Interval(1, 1), Interval(-1, 2), Interval(-0.9, 0.4)) is EMPTY


def test_inv_sqrt():
    assert inv_sqrt(Interval(2, 3)) == Interval(4, 9)
    assert inv_sqrt(Interval(-2, -1)) is EMPTY


def test_roots_of_subnormals_are_tight():
    assert sqrt(Interval(0, 2.0 ** -1074)) == Interval(0, 2.0 ** -537)
    for a in (1e-320, 1e-310):
        r, s = sqrt(Interval(a, a)), math.sqrt(a)
        assert r.lo <= s <= r.hi and r.hi - r.lo <= 4 * math.ulp(s)
    assert inv_pow_even(Interval(0, 5e-324)).hi < 1e-161


def test_inv_cos_contains_branches():
    r = inv_cos(Interval(1, 1), Interval(-1, 7))
    assert 0.0 in r and r.hi >= 2 * math.pi


def test_set_operations():
    assert hull([Interval(1, 2), Interval(5, 6)]) == Interval(1, 6)
    assert intersect(Interval(1, 3), Interval(4, 5)) is EMPTY
    assert split(Interval(0, 4)) == (Interval(0, 2), Interval(2, 4))
    assert width(Interval(1, 4)) == 3
    assert width(EMPTY) == 0


def test_hull_ignores_empty():
    assert hull([EMPTY, Interval(1, 2)]) == Interval(1, 2)
    assert hull([]) is EMPTY


def test_midpoint_of_unbounded():
    assert midpoint(ENTIRE) == 0
    assert math.isfinite(midpoint(Interval(3, math.inf)))
    assert can_split(Interval(3, math.inf))


def test_split_refuses_atomic_interval():
    x = 1.0
    with pytest.raises(ValueError):
        split(Interval(x, math.nextafter(x, 2)))


def test_empty_is_absorbing():
    assert add(EMPTY, Interval(1, 2)) is EMPTY
    assert mul(Interval(1, 2), EMPTY) is EMPTY
    assert exp(EMPTY) is EMPTY


def test_constructor_validation():
    with pytest.raises(ValueError):
        Interval(2, 1)
    with pytest.raises(ValueError):
        Interval(float("nan"), 1)
    with pytest.raises(ValueError):
        Interval(math.inf, math.inf)


def test_text_round_trip():
    for iv in (Interval(-1.5, 2), ENTIRE, EMPTY, Interval(0.1, 0.30000000000000004)):
        assert parse_interval(str(iv)) == iv


def test_enclose_decimal():
    assert enclose_decimal("0.5") == Interval(0.5, 0.5)
    r = enclose_decimal("3.84")
    assert r.lo < r.hi and math.nextafter(r.lo, 4) == r.hi
    assert F(r.lo) < Fraction("3.84") < F(r.hi)


def test_log_domain():
    assert log(Interval(-2, -1)) is EMPTY
    assert log(Interval(-2, 0)) is EMPTY
    assert log(Interval(0, 1)) == Interval(-math.inf, 0)
    assert log(Interval(1, 1)) == Interval(0, 0)


# -- properties -----------------------------------------------------------------

@given(interval_and_point(), interval_and_point())
def test_add_sub_mul_contain_exact_result(ax, by):
    (a, x), (b, y) = ax, by
    for op, exact in ((add, F(x) + F(y)), (sub, F(x) - F(y)), (mul, F(x) * F(y))):
        r = op(a, b)
        assert F(r.lo) <= exact <= F(r.hi)


@given(interval_and_point(), interval_and_point())
def test_div_contains_exact_quotient(ax, by):
    (a, x), (b, y) = ax, by
    assume(y != 0)
    r = div(a, b)
    q = F(x) / F(y)
    assert (r.lo == -math.inf or F(r.lo) <= q) and (r.hi == math.inf or q <= F(r.hi))


# magnitudes spread over the whole exponent range, subnormals included
scaled = st.builds(lambda m, e: math.ldexp(m, e), st.floats(-1, 1), st.integers(-1080, 1000))


@given(interval_and_point(scaled), interval_and_point(scaled))
def test_mul_div_sound_across_exponent_range(ax, by):
    (a, x), (b, y) = ax, by
    r = mul(a, b)
    assert (r.lo == -math.inf or F(r.lo) <= F(x) * F(y)) and \
           (r.hi == math.inf or F(x) * F(y) <= F(r.hi))
    if y != 0:
        r, q = div(a, b), F(x) / F(y)
        assert (r.lo == -math.inf or F(r.lo) <= q) and (r.hi == math.inf or q <= F(r.hi))


@given(interval_and_point(st.builds(abs, scaled)), st.integers(2, 5))
def test_roots_sound_across_exponent_range(ax, n):
    # the n-th root of x must lie in the projection of a onto the base
    a, x = ax
    r = inv_pow_even(a, n) if n % 2 == 0 else inv_pow_odd(a, n)
    assert r.hi == math.inf or F(r.hi) ** n >= F(x)
    assert F(max(r.lo, 0.0)) ** n <= F(x)


@given(interval_and_point(), st.integers(1, 7))
def test_pow_contains_exact_power(ax, n):
    a, x = ax
    r = pow_int(a, n)
    assert F(r.lo) <= F(x) ** n <= F(r.hi)


@given(interval_and_point(st.floats(-700, 700)))
def test_exp_contains_oracle(ax):
    a, x = ax
    r = exp(a)
    with mpmath.workprec(200):
        v = mpmath.exp(mpmath.mpf(x))
        assert r.lo <= v <= r.hi


@given(interval_and_point(st.floats(1e-300, 1e300)))
def test_log_contains_oracle(ax):
    a, x = ax
    r = log(a)
    with mpmath.workprec(200):
        v = mpmath.log(mpmath.mpf(x))
        assert r.lo <= v <= r.hi


@given(interval_and_point())
def test_cos_contains_oracle(ax):
    a, x = ax
    r = cos(a)
    with mpmath.workprec(200):
        v = mpmath.cos(mpmath.mpf(x))
        assert r.lo <= v <= r.hi


@given(interval_and_point(st.floats(0, 1e12)))
def test_sqrt_contains_oracle(ax):
    a, x = ax
    r = sqrt(a)
    with mpmath.workprec(200):
        v = mpmath.sqrt(mpmath.mpf(x))
        assert r.lo <= v <= r.hi


@given(intervals(), intervals())
def test_inclusion_monotone(a, b):
    # shrinking an operand can only shrink the result
    a2 = Interval(a.lo, a.lo + (a.hi - a.lo) / 2) if a.hi > a.lo else a
    for op in (add, sub, mul, div):
        assert op(a2, b).issubset(op(a, b))
    assert neg(a2).issubset(neg(a))


@given(interval_and_point(), interval_and_point())
def test_inv_mul_keeps_solutions(xx, yy):
    (xi, x), (yi, y) = xx, yy
    v = float(F(x) * F(y))
    z = Interval(math.nextafter(v, -math.inf), math.nextafter(v, math.inf))
    assert x in inv_mul(z, yi, xi)


@given(interval_and_point(st.floats(-1e3, 1e3)), st.integers(2, 6))
def test_inv_pow_keeps_solutions(ax, n):
    a, x = ax
    v = float(F(x) ** n)
    z = Interval(math.nextafter(v, -math.inf), math.nextafter(v, math.inf))
    inv = inv_pow_even if n % 2 == 0 else inv_pow_odd
    assert x in inv(z, n, a)


@given(interval_and_point(st.floats(-1e4, 1e4)))
def test_inv_cos_keeps_solutions(ax):
    a, x = ax
    c = math.cos(x)
    z = Interval(max(-1.0, c - 4 * math.ulp(c) - 1e-300), min(1.0, c + 4 * math.ulp(c) + 1e-300))
    assert x in inv_cos(z, a)


@given(st.lists(intervals(), min_size=1, max_size=5))
def test_hull_contains_every_member(ivs):
    h = hull(ivs)
    assert all(iv.issubset(h) for iv in ivs)
    assert any(iv.lo == h.lo for iv in ivs) and any(iv.hi == h.hi for iv in ivs)


@given(intervals(), intervals())
def test_intersect_is_largest_common_subset(a, b):
    r = intersect(a, b)
    assert r.issubset(a) and r.issubset(b)
    if not r.is_empty:
        assert r.lo == max(a.lo, b.lo) and r.hi == min(a.hi, b.hi)


@given(intervals())
def test_split_covers_interval(a):
    assume(can_split(a))
    left, right = split(a)
    assert left.lo == a.lo and right.hi == a.hi and left.hi == right.lo
    assert left.hi - left.lo < a.hi - a.lo
