"""Build script; compiles the optional alignment DP kernel when Cython is present."""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("stilo._kernels._dp_cy", ["src/stilo/_kernels/_dp_cy.pyx"])],
        compiler_directives={
            "language_level": "3",
            "boundscheck": False,
            "wraparound": False,
            "cdivision": True,
        },
    )
except ImportError:
    import warnings

    warnings.warn(
        "Cython not available: installing with the pure-Python alignment kernel only"
    )

setup(ext_modules=ext_modules)
