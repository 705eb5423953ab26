#!/usr/bin/env python3

from setuptools import setup, find_packages

setup(
    name='odelin',
    version='0.3',
    description='Linearizability tests for quasi-linear ordinary differential equations',
    license="MIT",

    classifiers=[
        "Development Status :: 3 - Alpha",
        "Environment :: Console",
        "Environment :: Web Environment",
        "Framework :: Flask",
        "License :: OSI Approved :: MIT License",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],

    packages=find_packages(exclude=['tests']),
    include_package_data=True,
    zip_safe=False,
    python_requires='>=3.8',

    install_requires=[
        'sympy',
        'pyparsing>=3.0',
        'Flask',
        'Flask-RESTful',
        'SQLAlchemy>=1.4',
    ],
    extras_require={
        'tests': ['pytest'],
    },

    entry_points={
        'console_scripts': [
            'odelin = odelin.__main__:main'
        ]
    }
)
