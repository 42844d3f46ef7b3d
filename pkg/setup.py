import os

from setuptools import setup

ext_modules = []
if os.environ.get("BARNESG_NO_EXT") != "1":
    try:
        import numpy
        from Cython.Build import cythonize
        from setuptools.extension import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "barnesg._fastkernels",
                    ["src/barnesg/_fastkernels.pyx"],
                    include_dirs=[numpy.get_include(), "src/barnesg"],
                    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython/numpy at build time: install the pure-Python fallback only.
        ext_modules = []

setup(ext_modules=ext_modules)
