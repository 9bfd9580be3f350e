"""Build script: compiles the optional GF(3) Cython kernel.

The package works without the extension (pure-Python fallback is selected
at import time); set ADAMS3_REQUIRE_EXT=1 to turn a failed extension build
into a hard error.
"""

import os

from setuptools import setup
from setuptools.command.build_ext import build_ext

REQUIRE_EXT = os.environ.get("ADAMS3_REQUIRE_EXT", "") == "1"

ext_modules = []
cmdclass = {}

try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [
            Extension(
                "adams3.gf3._kernel_cy",
                ["src/adams3/gf3/_kernel_cy.pyx"],
            )
        ],
        language_level="3",
    )

    class OptionalBuildExt(build_ext):
        def run(self):
            try:
                super().run()
            except Exception:
                if REQUIRE_EXT:
                    raise
                print("warning: GF(3) extension build failed, using pure-Python kernel")

        def build_extension(self, ext):
            try:
                super().build_extension(ext)
            except Exception:
                if REQUIRE_EXT:
                    raise
                print(f"warning: could not build {ext.name}, using pure-Python kernel")

    cmdclass["build_ext"] = OptionalBuildExt
except ImportError:
    if REQUIRE_EXT:
        raise

setup(ext_modules=ext_modules, cmdclass=cmdclass)
