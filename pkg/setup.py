"""Build script for the optional compiled kernel extension.

The package works without the extension: ``mubose._backend`` falls back to
the pure-Python kernels when ``mubose._kernels`` is missing.  Set
``MUBOSE_NO_EXT=1`` to skip the build explicitly.
"""

import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("MUBOSE_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "mubose._kernels",
                    ["src/mubose/_kernels.pyx"],
                    # -ffp-contract=off keeps the compiled arithmetic free of
                    # fused multiply-adds so both backends round identically.
                    extra_compile_args=["-O2", "-ffp-contract=off"],
                )
            ],
            language_level=3,
        )

setup(ext_modules=ext_modules)
