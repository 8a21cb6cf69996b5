"""Builds the compiled kernel extension.

The extension is optional: if Cython or a C compiler is unavailable the
package installs without it and falls back to the pure-Python kernels at
import time (see cslcs.backend).
"""

from setuptools import setup

try:
    import numpy as np
    from Cython.Build import cythonize
    from setuptools import Extension

    extensions = cythonize(
        [
            Extension(
                "cslcs._kernels",
                ["src/cslcs/_kernels.pyx"],
                include_dirs=[np.get_include()],
                extra_compile_args=["-O3"],
                define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
