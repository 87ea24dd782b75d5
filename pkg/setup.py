"""
Setup script for superjordan.
"""

from setuptools import setup, find_packages

setup(
    name="superjordan",
    version="0.1.0",
    description="Exact computations with Jordan superalgebras of small dimension",
    author="Unclecode",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=[
        "pydantic>=2.0",
        "python-dotenv>=1.0.0",
        "typer>=0.12.0",
        "tqdm>=4.66.0",
        "sympy>=1.12",
    ],
    entry_points={
        "console_scripts": [
            "superjordan=superjordan.cli:app",
        ],
    },
    python_requires=">=3.8",
    classifiers=[
        "Development Status :: 3 - Alpha",
        "Intended Audience :: Science/Research",
        "License :: OSI Approved :: Apache Software License",
        "Programming Language :: Python :: 3",
        "Programming Language :: Python :: 3.8",
        "Programming Language :: Python :: 3.9",
        "Programming Language :: Python :: 3.10",
        "Programming Language :: Python :: 3.11",
        "Topic :: Scientific/Engineering :: Mathematics",
    ],
)
