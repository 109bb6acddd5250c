"""Build script: compiles the optional fast kernel.

The package is pure Python plus one optional Cython extension
(``hypercheck._speedups``).  If Cython or a C compiler is missing the
build still succeeds and the pure-Python kernel is used at runtime.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "hypercheck._speedups",
                ["src/hypercheck/_speedups.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )

setup(ext_modules=ext_modules)
