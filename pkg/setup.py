"""Build hook for the optional compiled kernel lane.

The package works without the extension: conespan._kernels falls back to
the pure-Python implementations when the compiled module is missing.
"""

from setuptools import Extension, setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [
            Extension(
                "conespan._kernels._fast",
                ["src/conespan/_kernels/_fast.pyx"],
                optional=True,
            )
        ],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
