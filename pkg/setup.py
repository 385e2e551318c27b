from setuptools import Extension, setup

try:
    from Cython.Build import cythonize
except ImportError:  # pure-Python install; distcolor._kernels falls back
    ext_modules = []
else:
    ext_modules = cythonize(
        [
            Extension(
                "distcolor._kernels._fast",
                ["src/distcolor/_kernels/_fast.pyx"],
                language="c++",
                extra_compile_args=["-O3"],
                optional=True,
            )
        ],
        compiler_directives={"language_level": "3"},
    )

setup(ext_modules=ext_modules)
