"""Build the optional Cython kernels.

If Cython or a C compiler is missing the package still installs; the
NumPy fallback in ``revival_lab._pykernels`` is then used at import time.
"""
import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class OptionalBuildExt(build_ext):
    def run(self):
        try:
            super().run()
        except Exception as exc:  # noqa: BLE001
            self.warn(f"compiled kernels not built ({exc}); using the pure-Python fallback")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # noqa: BLE001
            self.warn(f"building {ext.name} failed ({exc}); using the pure-Python fallback")


def extensions():
    if os.environ.get("REVIVAL_LAB_NO_EXT"):
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:
        return []
    openmp = [] if os.environ.get("REVIVAL_LAB_NO_OPENMP") else ["-fopenmp"]
    ext = Extension(
        "revival_lab._ckernels",
        ["src/revival_lab/_ckernels.pyx"],
        extra_compile_args=["-O3", *openmp],
        extra_link_args=openmp,
    )
    return cythonize(
        [ext],
        compiler_directives={"language_level": "3"},
        quiet=True,
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": OptionalBuildExt})
