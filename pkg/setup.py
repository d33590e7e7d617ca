"""Builds the optional compiled kernel extension.

The package works without it (a NumPy fallback is selected at import);
set DIRACSYM_NO_EXT=1 to skip the extension build entirely.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("DIRACSYM_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext = Extension(
            "diracsym.kernels._ckernels",
            ["src/diracsym/kernels/_ckernels.pyx"],
            extra_compile_args=["-O3"],
            optional=True,
        )
        ext_modules = cythonize([ext], language_level=3)

setup(ext_modules=ext_modules)
