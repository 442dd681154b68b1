from setuptools import Extension, setup

try:
    from Cython.Build import cythonize

    ext_modules = cythonize(
        [Extension("rampss._gfkernels", ["src/rampss/_gfkernels.pyx"])],
        compiler_directives={"language_level": "3"},
    )
except ImportError:
    # No Cython at build time: the pure-Python kernels are used instead.
    ext_modules = []

setup(ext_modules=ext_modules)
