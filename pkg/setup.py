from codecs import open
from os.path import abspath, dirname, join
from os import environ

from setuptools import find_packages, setup

this_dir = abspath(dirname(__file__))
with open(join(this_dir, "README.rst"), encoding="utf-8") as file:
    long_description = file.read()

with open(join(this_dir, "requirements.txt")) as f:
    requirements = [line for line in f.read().split("\n") if line.strip()]

version = environ.get("VERSION", "1.0.dev0")

setup(
    name="autogbts",
    version=version,
    description="Exact Gaussian Boson Threshold Sampling of shallow local optical circuits",
    long_description=long_description,
    long_description_content_type="text/x-rst",
    include_package_data=True,
    package_data={"autogbts": ["config/*.ini"]},
    license="MIT License",
    classifiers=[
        "Intended Audience :: Science/Research",
        "Topic :: Scientific/Engineering :: Physics",
        "License :: OSI Approved :: MIT License",
        "Natural Language :: English",
        "Operating System :: OS Independent",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
    ],
    keywords="cli",
    packages=find_packages(exclude=["docs", "test_autogbts", "test_autogbts.*"]),
    install_requires=requirements,
    entry_points={"console_scripts": ["autogbts = autogbts.cli.main:main"]},
    setup_requires=["pytest-runner"],
    tests_require=["pytest", "hypothesis"],
)
