from setuptools import setup

version = "0.1.0"

with open("./README.md") as fd:
    long_description = fd.read()

setup(
    name="groupoid-haar",
    version=version,
    description=
    "Verify and synthesize Haar systems on finite groupoids",
    long_description=long_description,
    install_requires=[
        "numpy",
        "sympy",
        "tqdm"
    ],
    extras_require={
        "test": ["hypothesis"]
    },
    author="Kwanghun Chung Lab",
    packages=["groupoid_haar"],
    entry_points={ 'console_scripts': [
        'groupoid-haar=groupoid_haar.main:main'
    ]},
    license="MIT",
    classifiers=[
        "Development Status :: 3 - Alpha",
        'Programming Language :: Python :: 3.6',
        'Programming Language :: Python :: 3.8'
    ],
)
