from setuptools import setup, find_packages

setup(
    name="taftgreen",
    version="0.1.0",
    packages=find_packages(exclude=["test"]),
    install_requires=["colorama", "rich", "sympy>=1.13"],
    entry_points={"console_scripts": ["gr=taftgreen.cli:main"]},
)
