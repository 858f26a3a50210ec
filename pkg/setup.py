import llitest
from setuptools import setup, find_packages

setup(
    name='llitest',
    version=llitest.__version__,
    description='Simulation and analysis toolkit for trapped-ion tests of local Lorentz invariance '
                'in the electron sector',
    packages=find_packages(exclude=['test', 'test.*']),
    install_requires=[
        'coverage==5.5',
        'nose==1.3.7',
        'numpy>=1.21',
        'pandas>=1.3',
        'scipy>=1.7',
        'tabulate==0.8.9',
        'toml==0.10.2',
        'tqdm==4.62.3'
    ],
    entry_points={
        "console_scripts": [
            "llitest = llitest.llitest_cli:main"
        ]
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: EPL-2.0',
        'Operating System :: OS Independent'
    ]
)
