from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:
    cythonize = None

extensions = [Extension("g2csd._bitkernel", ["src/g2csd/_bitkernel.pyx"])]

if cythonize is not None:
    ext_modules = cythonize(extensions, compiler_directives={"language_level": "3"})
else:
    # Without Cython the package installs pure-Python only; g2csd.bitstream
    # falls back automatically.
    ext_modules = []

setup(ext_modules=ext_modules)
