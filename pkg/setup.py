import os

from setuptools import setup

ext_modules = []
if not os.environ.get("CYCDEC_SKIP_EXT"):
    try:
        from Cython.Build import cythonize

        ext_modules = cythonize(
            ["src/cycdec/_speedups.pyx"],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: install the pure-Python kernel only.
        ext_modules = []

setup(ext_modules=ext_modules)
