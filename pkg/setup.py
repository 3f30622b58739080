"""Builds the optional compiled kernels; metadata lives in pyproject.toml."""

from setuptools import setup

ext_modules = []
try:
    import numpy
    from Cython.Build import cythonize
    from setuptools import Extension
except ImportError:
    pass
else:
    ext_modules = cythonize(
        [Extension("bgroup._kernels", ["src/bgroup/_kernels.pyx"],
                   include_dirs=[numpy.get_include()], optional=True)],
        compiler_directives={"language_level": 3},
    )

setup(ext_modules=ext_modules)
