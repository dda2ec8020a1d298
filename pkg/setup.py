#!/usr/bin/env python
# -*- coding: utf-8 -*-
from setuptools import setup, find_packages

with open('README.md') as readme_file:
    readme = readme_file.read()

requirements = [
    'Click>=8.0',
    'PyYAML>=6.0',
]

setup(
    name='fnef-m07',
    version='0.1.0',
    description="Exact certificates for F-nef divisors on moduli of pointed rational curves",
    long_description=readme,
    packages=find_packages(include=['src', 'src.*']),
    package_data={'src': ['corpus/*.cert', 'corpus/index.yml']},
    entry_points={
        'console_scripts': [
            'fnef=src.main:run'
        ]
    },
    include_package_data=True,
    install_requires=requirements,
    zip_safe=False,
    keywords='fnef-m07',
    classifiers=[
        'Intended Audience :: Science/Research',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Mathematics',
    ]
)
