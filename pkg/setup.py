"""Build script for the optional compiled kernels.

The package works without the extension (pure-Python fallback), so a
missing Cython or compiler only produces a warning.
"""

import sys

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize
except ImportError:
    print("Cython not available; building pure-Python package only", file=sys.stderr)
else:
    ext_modules = cythonize(
        [
            Extension(
                "stairmaj._kernels_c",
                ["src/stairmaj/_kernels_c.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
