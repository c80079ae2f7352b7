"""Build script: compiles the enumeration kernels when a C toolchain is available.

The package works without the extension (a pure-Python twin of the kernel
module is selected at import time), so compilation failures are demoted to
a warning rather than aborting the install.
"""

import sys

from setuptools import Extension, setup


def extensions():
    try:
        from Cython.Build import cythonize
    except ImportError:
        print("proxima: Cython unavailable, building without compiled kernels", file=sys.stderr)
        return []
    return cythonize(
        [
            Extension(
                "proxima._scan",
                ["src/proxima/_scan.pyx"],
                extra_compile_args=["-O3"],
            )
        ],
        compiler_directives={"language_level": "3"},
    )


try:
    setup(ext_modules=extensions())
except SystemExit:
    raise
except Exception as exc:  # pragma: no cover - toolchain-dependent path
    print(f"proxima: extension build failed ({exc}); retrying pure-Python", file=sys.stderr)
    setup(ext_modules=[])
