from setuptools import setup, find_packages

setup(
    name="stegblocks",
    version="1.0.0",
    description="Block-based network steganography over object streams",
    author="Silviu Ciobanica-Mkrtchyan",
    author_email="silviu.cimk@outlook.com",
    packages=find_packages(where="src"),
    package_dir={"": "src"},
    py_modules=["main"],
    install_requires=[
        "numpy>=1.26",
        "scipy>=1.11",
        "simpy>=4.1",
    ],
    entry_points={
        "console_scripts": [
            "stegblocks=main:main",
        ],
    },
    python_requires=">=3.10",
)
