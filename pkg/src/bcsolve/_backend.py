"""Kernel selection.

The compiled kernel (``_ckernel``, built from Cython) is used when it can be
imported; otherwise the pure-Python kernel. ``BCSOLVE_KERNEL=python`` forces
the fallback, ``BCSOLVE_KERNEL=compiled`` makes a missing extension an error.
"""

import os

from . import _pykernel

_choice = os.environ.get("BCSOLVE_KERNEL", "auto").lower()

if _choice == "python":
    kernel = _pykernel
else:
    try:
        from . import _ckernel as kernel
    except ImportError:
        if _choice == "compiled":
            raise
        kernel = _pykernel

NAME = "python" if kernel is _pykernel else "compiled"


def available():
    """Names of the kernels importable in this environment."""
    names = ["python"]
    try:
        from . import _ckernel  # noqa: F401
    except ImportError:
        pass
    else:
        names.append("compiled")
    return names


def name_of(k):
    return "python" if k is _pykernel else "compiled"


def load(name):
    if name == "python":
        return _pykernel
    if name == "compiled":
        from . import _ckernel
        return _ckernel
    raise ValueError(f"unknown kernel {name!r}")
