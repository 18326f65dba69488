import numpy
from Cython.Build import cythonize
from setuptools import Extension, setup

# -ffp-contract=off: the solver kernel must produce bit-identical floats to
# the NumPy twin; FMA contraction would break that.
extensions = [
    Extension(
        "tweenlines.kernels._speedups",
        ["src/tweenlines/kernels/_speedups.pyx"],
        include_dirs=[numpy.get_include()],
        define_macros=[("NPY_NO_DEPRECATED_API", "NPY_1_7_API_VERSION")],
        extra_compile_args=["-O3", "-ffp-contract=off"],
    )
]

setup(ext_modules=cythonize(extensions, language_level=3))
