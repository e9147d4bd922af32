"""Install perr-lab."""

from setuptools import find_packages, setup

# get version number
# from https://github.com/mapbox/rasterio/blob/master/setup.py#L55
with open("perr_lab/__init__.py") as f:
    for line in f:
        if line.find("__version__") >= 0:
            version = line.split("=")[1].strip().strip('"').strip("'")
            break

# use README.rst for project long_description
with open("README.rst") as f:
    readme = f.read()


install_requires = [
    "cached_property",
    "click>=7.1.1",
    "click-plugins",
    "fsspec",
    "numpy>=1.17",
    "pandas>=1.1",
    "scipy>=1.4",
    "tqdm",
]

setup(
    name="perr-lab",
    version=version,
    description="Simulation laboratory for prior event rate ratio estimators",
    long_description=readme,
    license="MIT",
    packages=find_packages(exclude=["test", "test.*"]),
    entry_points={
        "console_scripts": ["perr-lab=perr_lab.cli.main:main"],
        "perr_lab.cli.commands": [],
    },
    install_requires=install_requires,
    python_requires=">=3.9",
    tests_require=[
        "coverage",
        "flake8",
        "pytest",
        "pytest-cov",
    ],
    classifiers=[
        "Development Status :: 4 - Beta",
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Medical Science Apps.",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
    ],
)
