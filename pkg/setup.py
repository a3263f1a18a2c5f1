"""Build script: compiles the reduction kernel when Cython + a C compiler are present.

The package works without the extension (pure-Python kernel is selected at
import time), so the extension is marked optional.
"""

from setuptools import setup, Extension

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "scmlab._kernel._core",
                ["src/scmlab/_kernel/_core.pyx"],
                optional=True,
            )
        ],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
