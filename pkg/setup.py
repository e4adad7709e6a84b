# **************************************************************************
# *
# * pyspinctl: microwave-only control of an electron-nuclear spin pair
# *
# * This program is free software: you can redistribute it and/or modify
# * it under the terms of the GNU General Public License as published by
# * the Free Software Foundation, either version 3 of the License, or
# * (at your option) any later version.
# *
# * This program is distributed in the hope that it will be useful,
# * but WITHOUT ANY WARRANTY; without even the implied warranty of
# * MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# * GNU General Public License for more details.
# *
# * You should have received a copy of the GNU General Public License
# * along with this program.  If not, see <https://www.gnu.org/licenses/>.
# *
# **************************************************************************

"""A setuptools based setup module.
See:
https://packaging.python.org/en/latest/distributing.html
"""

# Always prefer setuptools over distutils
from setuptools import setup, find_packages
# To use a consistent encoding
from codecs import open
from os import path

import pyspinctl

here = path.abspath(path.dirname(__file__))

# Get the long description from the README file
with open(path.join(here, 'README.rst'), encoding='utf-8') as f:
    long_description = f.read()

# Read requirements.txt
with open(path.join(here, 'requirements.txt')) as f:
    requirements = [r for r in f.read().splitlines() if r.strip()]


setup(
    name='pyspinctl',

    version=pyspinctl.__version__,

    description='Simulation of microwave-only control of an electron-'
                'nuclear spin pair near exact cancellation, with ESEEM '
                'processing and orientation scans.',

    long_description=long_description,

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Programming Language :: Python :: 3',
        'Topic :: Scientific/Engineering :: Physics'
    ],

    keywords='epr esr eseem spin quantum-control simulation',

    packages=find_packages(exclude=['examples', 'examples.*']),

    install_requires=requirements,

    # Example sequences and configuration files
    package_data={
      'pyspinctl': ['resources/*']
    },

    # The spinctl command and the test runner
    entry_points={
        'console_scripts': [
            'spinctl = pyspinctl.apps.spinctl:main',
            'spinctl-tests = pyspinctl.apps.spinctl_run_tests:main',
        ],
    },
)
