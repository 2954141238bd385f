"""Build script: compiles the optional C accelerator when Cython is available.

The package is fully functional without the extension; clusterfrob.kernels
falls back to the pure-Python twin at import time.  Set CLUSTERFROB_NO_EXT=1
to skip the compile step entirely.
"""

import os

from setuptools import Extension, setup
from setuptools.command.build_ext import build_ext


class optional_build_ext(build_ext):
    """Best-effort build: a failed compile must not fail the install."""

    def run(self):
        try:
            super().run()
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping C accelerator build ({exc!r})")

    def build_extension(self, ext):
        try:
            super().build_extension(ext)
        except Exception as exc:  # pragma: no cover - toolchain dependent
            print(f"warning: skipping {ext.name} ({exc!r})")


def extensions():
    if os.environ.get("CLUSTERFROB_NO_EXT") == "1":
        return []
    try:
        from Cython.Build import cythonize
    except ImportError:  # pragma: no cover - build environment dependent
        return []
    ext = Extension(
        "clusterfrob._accel",
        ["src/clusterfrob/_accel.pyx"],
        extra_compile_args=["-O2"],
    )
    return cythonize([ext], language_level="3")


setup(ext_modules=extensions(), cmdclass={"build_ext": optional_build_ext})
