from setuptools import setup, find_packages

setup(
    name="cvqmem",
    version="0.1.0",
    description="Gaussian simulation and classical benchmarks of a continuous-variable atomic quantum memory, based on JAX and Equinox",
    packages=find_packages(exclude=["tests"]),
    python_requires=">=3.9",
    install_requires=[
        "jax>=0.4.25",
        "equinox>=0.11.4",
        "jaxtyping>=0.2.25",
        "numpy>=1.26",
        "scipy>=1.11",
    ],
    extras_require={"test": ["pytest>=7.0"]},
    entry_points={"console_scripts": ["cvqmem = cvqmem.cli.main:main"]},
)
