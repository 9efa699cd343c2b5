import os
import sys

from setuptools import Extension, setup

# The compiled kernels are optional: without Cython or a C compiler the
# package still installs and runs on the pure-Python fallback.
ext_modules = []
if os.environ.get("ORIENTCORR_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("Cython not found, building without compiled kernels", file=sys.stderr)
    else:
        ext_modules = cythonize(
            [
                Extension(
                    "orientcorr._kernels",
                    ["src/orientcorr/_kernels.pyx"],
                    # no -ffast-math: the modular multiply relies on exact IEEE rounding
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
