import os

from setuptools import setup

# The compiled kernels are optional: if Cython (or a C compiler) is not
# available the package falls back to the pure-Python kernels at import time.
ext_modules = []
if os.environ.get("KRICHEVER_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            "src/krichever/_kernels_c.pyx",
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        pass

setup(ext_modules=ext_modules)
