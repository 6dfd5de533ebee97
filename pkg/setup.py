#!/usr/bin/env python3
# -*- coding: utf-8 -*-

from setuptools import setup


NAME = "merglift"

try:
    with open('VERSION') as f:
        VERSION = f.read().strip()
except:
    VERSION = None

setup(
    name=NAME,
    version=VERSION,
    description="Polynomial approximation of holomorphic functions and their derivatives on product domains",
    long_description=(
        "Merglift builds polynomials that approximate a function of several complex variables together "
        "with its mixed partial derivatives on products of planar domains, reduces series in countably many "
        "variables to finitely many, and constructs chordally convergent polynomial sequences."
    ),
    python_requires='>=3.8',
    install_requires=[
        'lupa>=1.8',
        'numpy>=1.17',
        'scipy>=1.4',
    ],
    extras_require={
        'dev': [
            'hypothesis>=4.12',
            'pytest>=5.0',
        ],
        'build': [
            'pyinstaller',
        ],
    },
    # Only dependencies are installed; src/ runs from a checkout or through build.sh.
    packages=[],
    include_package_data=True,
    license='GPLv3',
)
