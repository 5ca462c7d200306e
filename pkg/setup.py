from setuptools import setup


with open('requirements.txt') as f:
    packages = f.read().splitlines()

setup(
    name='brtjurina',
    packages=['brtjurina'],
    install_requires=packages,
    entry_points={
        'console_scripts': ['brtjurina=brtjurina.cli:main']
    }
)
