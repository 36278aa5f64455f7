"""Builds the optional Cython kernel extension; the package works without it."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize

    ext_modules = cythonize(
        "src/qubitizer/_ckernels.pyx",
        compiler_directives={"language_level": "3"},
        quiet=True,
    )
    for ext in ext_modules:
        ext.include_dirs.append(numpy.get_include())
        ext.define_macros.append(("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION"))
except Exception as exc:  # noqa: BLE001 - any toolchain problem means pure-Python install
    print(f"building without compiled kernels: {exc}")

setup(ext_modules=ext_modules)
