import os

from setuptools import Extension, setup

ext_modules = []
if os.environ.get("K3LATTICE_NO_EXT", "") != "1":
    try:
        from Cython.Build import cythonize
    except ImportError:
        pass
    else:
        ext_modules = cythonize(
            [Extension("k3lattice._kernels._speedups", ["src/k3lattice/_kernels/_speedups.pyx"], extra_compile_args=["-O3"])],
            compiler_directives={"language_level": "3"},
        )

setup(ext_modules=ext_modules)
