#!/usr/bin/env python
# -*- coding: utf-8 -*-
from setuptools import setup, find_packages


install_requires = ['numpy>=1.19', 'scipy>=1.5', 'pandas>=1.5.0', 'tabulate>=0.8.9',
                    'torch>=1.8.1', 'scikit-learn>=0.24', 'optuna>=2.8', 'joblib>=1.0', 'tqdm>=4.50']
setup_requires = []
tests_require = ['pytest>=6.0']

classifiers = [
    'Development Status :: 3 - Alpha',
    'License :: OSI Approved :: Apache Software License',
    'Programming Language :: Python :: 3',
]

setup(
    name="clfbench",
    version="0.1.0",
    license="Apache-2.0 License",

    description="Classifier comparison on families of synthetic multivariate Gaussian datasets",
    long_description=open('README.md', encoding='utf-8').read(),
    long_description_content_type='text/markdown',

    python_requires='>=3.7',

    packages=find_packages(exclude=['tests', 'tests.*', 'examples', 'examples.*']),

    package_data={
        '': ['*.ini'],
    },

    install_requires=install_requires,
    tests_require=tests_require,
    extras_require={'test': tests_require},
    include_package_data=True,

    entry_points={
        'console_scripts': ['clfbench = clfbench.start:main'],
    },

    classifiers=classifiers
)
