"""Build glue for the optional compiled traversal kernel.

The package is fully functional without the extension (a pure-Python kernel
is selected at import time); building it just makes the hot tree scans much
faster.  Cython is only needed when building.
"""
from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [Extension("mdtds._kernel_cy", ["src/mdtds/_kernel_cy.pyx"])],
        language_level=3,
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
