from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # build without the compiled kernel
    ext_modules = []
else:
    ext_modules = cythonize(
        [Extension("slstar.kernel._ckernel", ["src/slstar/kernel/_ckernel.pyx"])],
        language_level=3,
    )

setup(ext_modules=ext_modules)
