from setuptools import setup, find_packages

setup(
    name="zlift",
    version="0.1.0",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    package_data={"": ["lattices/*.cfg"]},
    install_requires=[
        "rich>=13.7.0",
        "sympy>=1.12"
    ],
    extras_require={
        "test": ["pytest>=7.4"]
    },
    entry_points={
        "console_scripts": ["verify=services.cli:run"]
    }
)
