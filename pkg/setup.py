"""Build script for the compiled gate-kernel extension.

The package works without the extension (a pure-NumPy fallback is selected
at import time), so a missing Cython is tolerated here.
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "qvbench._kernels",
                ["src/qvbench/_kernels.pyx"],
                extra_compile_args=["-O3", "-fopenmp"],
                extra_link_args=["-fopenmp"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    ext_modules = []

setup(ext_modules=ext_modules)
