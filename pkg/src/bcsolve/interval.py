"""Closed floating-point intervals with outward rounding.

Directed rounding is realised by next-representable-value adjustment after
round-to-nearest (no rounding-mode switches), so every function here is
pure and thread-safe. See ``_pykernel`` for the exact policy.

>>> add(Interval(1, 2), Interval(3, 4))
Interval(4.0, 6.0)
>>> str(div(Interval(1, 1), Interval(-1, 2)))
'[-inf,inf]'
"""

from __future__ import annotations

import math
from typing import Iterable

from ._backend import kernel as _k

_INF = math.inf


class Interval:
    """Closed interval ``[lo, hi]`` of doubles; ``EMPTY`` is the empty set.

    Infinite endpoints are allowed; NaN is not.
    """

    __slots__ = ("lo", "hi")

    def __init__(self, lo: float, hi: float | None = None):
        lo = float(lo)
        hi = lo if hi is None else float(hi)
        if math.isnan(lo) or math.isnan(hi):
            raise ValueError("interval endpoint is NaN")
        if lo > hi:
            raise ValueError(f"lo > hi in [{lo!r}, {hi!r}]; use EMPTY")
        if lo == _INF or hi == -_INF:
            raise ValueError("interval contains no real number")
        object.__setattr__(self, "lo", lo + 0.0)
        object.__setattr__(self, "hi", hi + 0.0)

    @classmethod
    def _make(cls, lo: float, hi: float) -> Interval:
        """Build from kernel output; ``lo > hi`` maps to EMPTY."""
        if lo > hi:
            return EMPTY
        iv = object.__new__(cls)
        object.__setattr__(iv, "lo", lo + 0.0)
        object.__setattr__(iv, "hi", hi + 0.0)
        return iv

    def __setattr__(self, name, value):
        raise AttributeError("Interval is immutable")

    def __reduce__(self):
        if self.is_empty:
            return (_empty, ())
        return (Interval, (self.lo, self.hi))

    @property
    def is_empty(self) -> bool:
        return self.lo > self.hi

    def __eq__(self, other):
        if not isinstance(other, Interval):
            return NotImplemented
        return self.lo == other.lo and self.hi == other.hi

    def __hash__(self):
        return hash((self.lo, self.hi))

    def __repr__(self):
        if self.is_empty:
            return "EMPTY"
        return f"Interval({self.lo!r}, {self.hi!r})"

    def __str__(self):
        if self.is_empty:
            return "empty"
        return f"[{_fmt(self.lo)},{_fmt(self.hi)}]"

    def __contains__(self, x: float) -> bool:
        return self.lo <= x <= self.hi

    def issubset(self, other: Interval) -> bool:
        if self.is_empty:
            return True
        return other.lo <= self.lo and self.hi <= other.hi

    def __add__(self, other):
        return add(self, _coerce(other))

    __radd__ = __add__

    def __sub__(self, other):
        return sub(self, _coerce(other))

    def __rsub__(self, other):
        return sub(_coerce(other), self)

    def __mul__(self, other):
        return mul(self, _coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return div(self, _coerce(other))

    def __rtruediv__(self, other):
        return div(_coerce(other), self)

    def __neg__(self):
        return neg(self)

    def __pow__(self, n: int):
        return pow_int(self, n)

    def __and__(self, other):
        return intersect(self, other)

    def __or__(self, other):
        return hull([self, other])


def _empty():
    return EMPTY


EMPTY = object.__new__(Interval)
object.__setattr__(EMPTY, "lo", _INF)
object.__setattr__(EMPTY, "hi", -_INF)
ENTIRE = Interval(-_INF, _INF)


def _fmt(x: float) -> str:
    if x == _INF:
        return "inf"
    if x == -_INF:
        return "-inf"
    return f"{x:.17g}"


def _coerce(x) -> Interval:
    if isinstance(x, Interval):
        return x
    return Interval(x)


def parse_interval(text: str) -> Interval:
    """Inverse of ``str(Interval)``."""
    text = text.strip()
    if text == "empty":
        return EMPTY
    if not (text.startswith("[") and text.endswith("]")):
        raise ValueError(f"not an interval: {text!r}")
    lo, hi = text[1:-1].split(",")
    return Interval(float(lo), float(hi))


def enclose_decimal(text: str) -> Interval:
    """Tightest interval around the decimal literal ``text``.

    Degenerate when the literal is exactly representable, otherwise the
    two floats bracketing it.
    """
    from fractions import Fraction

    x = float(text)
    exact = Fraction(text)
    if math.isinf(x):
        return Interval(_k.MAXF, _INF)
    fx = Fraction(x)
    if fx == exact:
        return Interval(x, x)
    if fx < exact:
        return Interval(x, math.nextafter(x, _INF))
    return Interval(math.nextafter(x, -_INF), x)


# -- forward operations --------------------------------------------------------

def add(a: Interval, b: Interval) -> Interval:
    return Interval._make(*_k.iadd(a.lo, a.hi, b.lo, b.hi))


def sub(a: Interval, b: Interval) -> Interval:
    return Interval._make(*_k.isub(a.lo, a.hi, b.lo, b.hi))


def mul(a: Interval, b: Interval) -> Interval:
    return Interval._make(*_k.imul(a.lo, a.hi, b.lo, b.hi))


def div(a: Interval, b: Interval) -> Interval:
    """Hull of ``{x | x * y = z for some z in a, y in b}``.

    This is ``{z/y}`` for ``y != 0``, plus every x when both ``a`` and ``b``
    contain 0; so ``b = [0,0]`` gives [-inf,inf] or EMPTY.
    """
    if a.is_empty or b.is_empty:
        return EMPTY
    return Interval._make(*_k.ediv(a.lo, a.hi, b.lo, b.hi, -_INF, _INF))


def neg(a: Interval) -> Interval:
    return Interval._make(*_k.ineg(a.lo, a.hi))


def pow_int(a: Interval, n: int) -> Interval:
    if n < 1:
        raise ValueError("exponent must be a positive integer")
    return Interval._make(*_k.ipow(a.lo, a.hi, int(n)))


def exp(a: Interval) -> Interval:
    return Interval._make(*_k.iexp(a.lo, a.hi))


def log(a: Interval) -> Interval:
    return Interval._make(*_k.ilog(a.lo, a.hi))


def cos(a: Interval) -> Interval:
    return Interval._make(*_k.icos(a.lo, a.hi))


def sqrt(a: Interval) -> Interval:
    return Interval._make(*_k.isqrt(a.lo, a.hi))


# -- inverse projections -----------------------------------------------------
# Each returns an enclosure of {x | exists other operands making the relation
# true}; the optional ``x`` restricts the answer to a current domain, which
# keeps multi-branch inverses (division across zero, even powers, cos) tight.

def inv_add(z: Interval, y: Interval) -> Interval:
    """x with x + y = z."""
    return sub(z, y)


def inv_sub_left(z: Interval, y: Interval) -> Interval:
    """x with x - y = z."""
    return add(z, y)


def inv_sub_right(z: Interval, x: Interval) -> Interval:
    """y with x - y = z."""
    return sub(x, z)


def inv_mul(z: Interval, y: Interval, x: Interval = ENTIRE) -> Interval:
    """x in ``x`` with x * y = z for some y in ``y``, z in ``z``."""
    return Interval._make(*_k.ediv(z.lo, z.hi, y.lo, y.hi, x.lo, x.hi))


def inv_pow_even(a: Interval, n: int = 2, x: Interval = ENTIRE) -> Interval:
    if n % 2:
        raise ValueError("n must be even")
    return Interval._make(*_k.iroot(a.lo, a.hi, n, x.lo, x.hi))


def inv_pow_odd(a: Interval, n: int = 3, x: Interval = ENTIRE) -> Interval:
    if n % 2 == 0:
        raise ValueError("n must be odd")
    return Interval._make(*_k.iroot(a.lo, a.hi, n, x.lo, x.hi))


def inv_exp(a: Interval) -> Interval:
    return log(a)


def inv_sqrt(a: Interval) -> Interval:
    """x >= 0 with sqrt(x) in a."""
    if a.is_empty or a.hi < 0.0:
        return EMPTY
    return pow_int(Interval(max(a.lo, 0.0), a.hi), 2)


def inv_cos(a: Interval, x: Interval) -> Interval:
    """Hull of the arccos branches of ``a`` that meet the domain ``x``."""
    return Interval._make(*_k.icos_inv(a.lo, a.hi, x.lo, x.hi))


# -- set operations ----------------------------------------------------------

def hull(intervals: Iterable[Interval]) -> Interval:
    lo, hi = _INF, -_INF
    for iv in intervals:
        if iv.is_empty:
            continue
        if iv.lo < lo:
            lo = iv.lo
        if iv.hi > hi:
            hi = iv.hi
    return Interval._make(lo, hi)


def intersect(a: Interval, b: Interval) -> Interval:
    return Interval._make(max(a.lo, b.lo), min(a.hi, b.hi))


def width(a: Interval) -> float:
    """``hi - lo`` rounded up; 0 for EMPTY."""
    if a.is_empty:
        return 0.0
    return _k.add_up(a.hi, -a.lo)


def midpoint(a: Interval) -> float:
    """A finite float inside ``a``, strictly inside whenever one exists."""
    if a.is_empty:
        raise ValueError("midpoint of empty interval")
    lo, hi = a.lo, a.hi
    if lo == -_INF and hi == _INF:
        return 0.0
    if lo == -_INF:
        return -_k.MAXF if hi > -_k.MAXF else hi
    if hi == _INF:
        return _k.MAXF if lo < _k.MAXF else lo
    m = 0.5 * lo + 0.5 * hi
    if m < lo:
        m = lo
    elif m > hi:
        m = hi
    return m + 0.0


def can_split(a: Interval) -> bool:
    if a.is_empty:
        return False
    m = midpoint(a)
    return a.lo < m < a.hi


def split(a: Interval) -> tuple[Interval, Interval]:
    """Bisect at the midpoint; both halves share it."""
    if not can_split(a):
        raise ValueError(f"cannot split {a}")
    m = midpoint(a)
    return Interval(a.lo, m), Interval(m, a.hi)
