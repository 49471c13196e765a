from setuptools import setup, find_packages

setup(
    name="wiener_hopf",
    version="0.1",
    packages=find_packages(exclude=["tests", "examples", "examples.*"]),
    install_requires=[
        'numpy',
        'pandas',
        'scipy',
        'python-dotenv',
    ],
    extras_require={
        'test': [
            'pytest',
            'pytest-cov',
        ],
    },
    entry_points={
        'console_scripts': [
            'wiener-hopf=wiener_hopf.cli:main',
        ],
    },
)
