from pybind11.setup_helpers import Pybind11Extension, build_ext
from setuptools import setup

ext = Pybind11Extension(
    "revpell._revpell",
    sources=[
        "src/mat2z.cpp",
        "src/involutions.cpp",
        "src/pell.cpp",
        "src/reversibility.cpp",
        "src/json_io.cpp",
        "src/python/revpell_module.cpp",
    ],
    include_dirs=["include", "vendor"],
    libraries=["gmpxx", "gmp"],
    cxx_std=20,
)

setup(ext_modules=[ext], cmdclass={"build_ext": build_ext})
