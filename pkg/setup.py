"""Build script: compiles the optional Cython kernel extension.

The compiled module accelerates the two hot loops (transfer-matrix
composition over energy grids and overlap-magnitude scans over time grids).
If the extension cannot be built, installation still succeeds and the
package transparently falls back to the pure-NumPy kernels at import time.
"""

import sys

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Degrade to the pure-Python install when compilation fails."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # compiler missing, etc.
            self._warn(exc)

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:
            self._warn(exc)

    @staticmethod
    def _warn(exc):
        print(
            f"WARNING: building the tunnelclock._kernels extension failed ({exc}); "
            "the pure-NumPy kernels will be used instead.",
            file=sys.stderr,
        )


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print(
            "WARNING: Cython not available; skipping the compiled kernels.",
            file=sys.stderr,
        )
        return []
    ext = Extension(
        "tunnelclock._kernels",
        ["src/tunnelclock/_kernels.pyx"],
        extra_compile_args=["-O3"],
    )
    return cythonize(
        [ext],
        language_level=3,
        compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
    )


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
