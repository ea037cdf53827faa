"""Build the optional compiled kernels.

If Cython or a C compiler is missing the package still installs and runs on
the pure-Python kernels.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize
    from setuptools import Extension

    ext_modules = cythonize(
        [Extension("stabkit._kernels", ["src/stabkit/_kernels.pyx"])],
        compiler_directives={"language_level": 3},
        quiet=True,
    )
except Exception as exc:  # pragma: no cover - build environment dependent
    print(f"stabkit: building without compiled kernels ({exc})")

setup(ext_modules=ext_modules)
