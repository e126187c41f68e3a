"""Build script: compiles the optional kernel extension.

The package works without the extension (a pure-Python fallback is selected
at import time), so a failed Cython build degrades gracefully instead of
blocking installation.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "oxtoby_lab._kernels._speedups",
                ["src/oxtoby_lab/_kernels/_speedups.pyx"],
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
