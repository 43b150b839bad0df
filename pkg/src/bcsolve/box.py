"""Boxes: named Cartesian products of intervals."""

from __future__ import annotations

from collections.abc import Mapping
from typing import Iterable

from .interval import EMPTY, Interval, hull, intersect, width


class Box(Mapping):
    """Immutable mapping from variable name to :class:`Interval`.

    A box with an empty coordinate is the empty box; ``is_empty`` reports it
    and every coordinate is then EMPTY.
    """

    __slots__ = ("_d", "_empty")

    def __init__(self, items: Mapping[str, Interval] | Iterable[tuple[str, Interval]] = ()):
        d = dict(items)
        for k, v in d.items():
            if not isinstance(v, Interval):
                d[k] = Interval(*v) if isinstance(v, tuple) else Interval(v)
        empty = any(v.is_empty for v in d.values())
        if empty:
            d = {k: EMPTY for k in d}
        self._d = d
        self._empty = empty

    @classmethod
    def empty(cls, names: Iterable[str]) -> Box:
        return cls({n: EMPTY for n in names})

    def __getitem__(self, name):
        return self._d[name]

    def __iter__(self):
        return iter(self._d)

    def __len__(self):
        return len(self._d)

    def __eq__(self, other):
        if not isinstance(other, Box):
            return NotImplemented
        return self._d == other._d

    def __hash__(self):
        return hash(tuple(sorted(self._d.items())))

    def __repr__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self._d.items())
        return f"Box({inner})"

    @property
    def is_empty(self) -> bool:
        return self._empty

    def replace(self, **domains: Interval) -> Box:
        d = dict(self._d)
        d.update(domains)
        return Box(d)

    def with_domain(self, name: str, iv: Interval) -> Box:
        d = dict(self._d)
        d[name] = iv
        return Box(d)

    def restrict(self, names: Iterable[str]) -> Box:
        return Box({n: self._d[n] for n in names})

    def issubset(self, other: Box) -> bool:
        if self._empty:
            return True
        return all(v.issubset(other[k]) for k, v in self._d.items())

    def intersect(self, other: Box) -> Box:
        return Box({k: intersect(v, other[k]) for k, v in self._d.items()})

    def hull(self, other: Box) -> Box:
        return Box({k: hull([v, other[k]]) for k, v in self._d.items()})

    def contains_point(self, point: Mapping[str, float]) -> bool:
        return not self._empty and all(point[k] in v for k, v in self._d.items())

    def max_width(self, names: Iterable[str] | None = None) -> float:
        names = self._d if names is None else names
        return max((width(self._d[n]) for n in names), default=0.0)

    def total_width(self) -> float:
        return sum(width(v) for v in self._d.values())

    def format(self) -> str:
        """One ``name = [lo,hi]`` line per variable."""
        return "\n".join(f"{k} = {v}" for k, v in self._d.items())
