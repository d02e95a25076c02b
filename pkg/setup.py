"""Build shim: compile the kernel extension when a toolchain is present.

The package works without it — kernels.py falls back to the pure-Python
twin — so a missing compiler or Cython only costs speed, never a failed
install.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/relk2/_speedups.pyx"],
        language_level=3,
    )
except ImportError:
    pass

setup(ext_modules=ext_modules)
