"""Build the optional compiled kernel.

If Cython or a C compiler is missing the package still installs and runs
on the pure-Python kernel.
"""

import os

from setuptools import setup

ext_modules = []
if os.environ.get("BCSOLVE_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "bcsolve._ckernel",
                    ["src/bcsolve/_ckernel.pyx"],
                    # no FMA contraction, no fast-math: rounding must match the Python kernel
                    extra_compile_args=["-O2", "-ffp-contract=off", "-fno-fast-math"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
