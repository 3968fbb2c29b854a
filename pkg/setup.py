"""Build script: compiles the enumeration kernel if Cython is available.

The compiled extension is optional.  When it is missing (no Cython, no C
compiler) the package falls back to the pure-Python kernel in
``multicurves._speedups_py`` with identical semantics, roughly 30-60x slower.

    python setup.py build_ext --inplace      # build the kernel in-tree
    pip install -e .                          # normal editable install
"""

from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    extensions = cythonize(
        [
            Extension(
                "multicurves._speedups",
                ["src/multicurves/_speedups.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    extensions = []

setup(ext_modules=extensions)
