import os
from setuptools import setup, find_packages

with open(os.path.join(os.path.dirname(__file__), "README.md")) as readme:
    README = readme.read()

# allow setup.py to be run from any path
os.chdir(os.path.normpath(os.path.join(os.path.abspath(__file__), os.pardir)))

setup(
    name="coulomb_tmatrix",
    version="0.1.0",
    packages=find_packages(),
    install_requires=[
        "django==4.2.14",
        "django-extensions",
        "mpmath",
        "numpy",
        "scipy",
    ],
    extras_require={
        "tests": ["hypothesis"],
    },
    include_package_data=True,
    license="BSD",
    description=(
        "Off-energy-shell Coulomb T-matrix at negative energy: series, "
        "quadrature and closed-form representations with a validation suite."
    ),
    long_description=README,
    long_description_content_type="text/markdown",
    classifiers=[
        "Environment :: Console",
        "Framework :: Django",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: BSD License",
        "Operating System :: OS Independent",
        "Programming Language :: Python",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Physics",
    ],
)
