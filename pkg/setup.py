"""Build script: compiles the optional row-echelon extension when Cython is around.

The package is fully functional without the extension (a pure-Python twin is
selected at import time), so any build failure here just means the slow path.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/ceikit/_echelon_cy.pyx"],
        language_level=3,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"ceikit: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
