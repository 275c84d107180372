"""Build script: compiles the optional Cython speedups when a toolchain is present.

The package is fully functional without the extension; ``fourier_dunkl._core``
falls back to the pure-numpy backend at import time.
"""

from setuptools import setup

ext_modules = []
try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        ["src/fourier_dunkl/_core/_speedups.pyx"],
        language_level="3",
        compiler_directives={"boundscheck": False, "wraparound": False, "cdivision": True},
    )
except ImportError:
    pass

# metadata duplicated from pyproject.toml so that pre-PEP-621 setuptools
# (no-index installs with --no-build-isolation) still builds a usable wheel
setup(
    name="fourier-dunkl",
    version="0.1.0",
    package_dir={"": "src"},
    packages=["fourier_dunkl", "fourier_dunkl._core"],
    package_data={"fourier_dunkl._core": ["*.pyx"]},
    install_requires=["numpy>=1.24"],
    entry_points={"console_scripts": ["fourier-dunkl = fourier_dunkl.cli:main"]},
    ext_modules=ext_modules,
)
