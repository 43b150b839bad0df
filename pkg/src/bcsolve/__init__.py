"""Interval bounds-consistency propagation over decomposed constraints."""

__version__ = "0.1.0"
