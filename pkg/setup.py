#!/usr/bin/env python

from setuptools import setup

setup(
    name="pyRadical",
    version="0.1",
    description="Optimal piecewise radical and Moebius reparameterization of rational curves",
    license="mit",
    packages=[
        "pyradical",
        "pyradical.core",
    ],
    python_requires=">=3.8",
    install_requires=[
        "sympy",
        "numpy",
        "scipy",
        "pandas",
    ],
    entry_points={
        "console_scripts": ["pyradical=pyradical.__main__:main"],
    },
    keywords=["GEOMETRY", "REPARAMETERIZATION"],
    classifiers=[
        "Development Status :: 3 - Alpha",
        "License :: OSI Approved :: MIT License",
        "Programming Language :: Python :: 3",
    ],
)
