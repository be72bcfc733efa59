"""Build script: compiles the optional fast kernels.

The package is pure Python plus one optional Cython extension
(``hodgelab._fast``) holding the hot integer linear-algebra loops.  If
Cython or a C compiler is unavailable the build silently degrades to the
pure-Python kernels; ``hodgelab.backend`` picks whichever is importable
at run time.  Set ``HODGELAB_NO_EXT=1`` to skip compilation explicitly.
"""

import os

from setuptools import setup

ext_modules = []
if not os.environ.get("HODGELAB_NO_EXT"):
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "hodgelab._fast",
                    ["src/hodgelab/_fast.pyx"],
                    extra_compile_args=["-O2"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        ext_modules = []

setup(ext_modules=ext_modules)
