#!/usr/bin/python3
# coding=utf-8
# File name   : setup.py
# Author      : toricchow developers

import os
import sys

from setuptools import find_packages, setup

curpath = os.path.realpath(__file__)
thisPath = os.path.dirname(curpath)


def check_python_version():
    major = int(sys.version_info.major)
    minor = int(sys.version_info.minor)
    micro = int(sys.version_info.micro)
    return major, minor, micro


def read_readme():
    with open(os.path.join(thisPath, 'README.md'), encoding='utf-8') as f:
        return f.read()


if check_python_version() < (3, 9, 0):
    print('toricchow needs Python 3.9 or newer')
    sys.exit(1)

setup(
    name='toricchow',
    version='1.0.0',
    description='Exact Chow groups, Minkowski weights and log Chow classes of toric fans',
    long_description=read_readme(),
    long_description_content_type='text/markdown',
    packages=find_packages(exclude=('examples', 'examples.*')),
    package_data={'toricchow': ['fixtures/*.json']},
    python_requires='>=3.9',
    install_requires=['numpy', 'sympy>=1.14', 'pycddlib>=2.1,<3'],
    extras_require={'test': ['pytest']},
    entry_points={'console_scripts': ['toricchow=toricchow.cli:main']},
)
