import os

from setuptools import setup

ext_modules = []
if os.environ.get("FSGLAB_NO_EXT") != "1":
    try:
        from Cython.Build import cythonize
        from setuptools import Extension

        ext_modules = cythonize(
            [
                Extension(
                    "fsglab._gf2core",
                    ["src/fsglab/_gf2core.pyx"],
                    extra_compile_args=["-O3"],
                )
            ],
            compiler_directives={"language_level": "3"},
        )
    except ImportError:
        # No Cython available: the pure-Python engine is used instead.
        ext_modules = []

setup(ext_modules=ext_modules)
