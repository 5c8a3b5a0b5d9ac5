import numpy as np
from Cython.Build import cythonize
from setuptools import Extension, setup

# optional: installs without a C toolchain fall back to the pure backend
ext = Extension(
    "blockcurves._fastcore",
    ["src/blockcurves/_fastcore.pyx"],
    include_dirs=[np.get_include()],
    extra_compile_args=["-O3"],
    define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
)
ext.optional = True
extensions = [ext]

setup(
    ext_modules=cythonize(
        extensions,
        compiler_directives={"language_level": "3", "boundscheck": False, "wraparound": False},
    )
)
