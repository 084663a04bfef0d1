"""Build script for the optional compiled kernels.

Set ORTHOLAB_NO_EXT=1 to skip the extension; the package then runs on the
pure-Python kernels.
"""
import os

from setuptools import Extension, setup

ext_modules = []
if not os.environ.get("ORTHOLAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
    except ImportError:
        cythonize = None
    if cythonize is not None:
        ext_modules = cythonize(
            [
                Extension(
                    "ortholab._kernels",
                    ["src/ortholab/_kernels.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
