from setuptools import Extension, setup
from Cython.Build import cythonize

setup(
    ext_modules=cythonize(
        [
            Extension(
                "hatguess._kernels",
                ["src/hatguess/_kernels.pyx"],
                extra_compile_args=["-O2"],
            )
        ],
        language_level="3",
    )
)
