from setuptools import setup, find_packages

setup(
    name="wkb-star",
    version="0.1.0",
    description="WKB star products on elementary solvable symplectic symmetric spaces.",
    packages=find_packages(exclude=("tests", "tests.*", "examples", "examples.*")),
    entry_points={"console_scripts": ["wkb-star=star_src.cli:main"]},
)
