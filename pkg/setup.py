"""Builds the optional compiled search kernel.

    pip install -e . --no-build-isolation

Without Cython or a C compiler the package installs pure-Python and the
fallback kernel is used.
"""
from setuptools import setup

try:
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("sdrkit._search", ["src/sdrkit/_search.pyx"],
                   extra_compile_args=["-O3"])],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
