import setuptools
from setuptools import setup

setup(
    name="pyUSD",
    version="0.1.0",
    license="MIT License",
    packages=setuptools.find_packages(exclude=["tests", "tests.*"]),
    entry_points={"console_scripts": ["pyusd=pyUSD.cli:app"]},
    include_package_data=True,
    install_requires=[
        "pydantic>=1.10.13,<2",
        "numpy",
        "scipy",
        "typer",
        "pyyaml",
        "toml",
        "joblib",
        "h5py",
    ],
    extras_require={"test": ["pytest"]},
)
