"""Builds the optional Cython kernels; the package still installs without them."""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("SADIC_NO_EXTENSION"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            "src/sadic/_ckernels.pyx",
            compiler_directives={"language_level": "3", "boundscheck": False,
                                 "wraparound": False},
            quiet=True,
        )

setup(ext_modules=ext_modules)
