from setuptools import setup

setup(
    name='distlaw',
    description='Classifies distributive laws between Com and Lie',
    version='0.1.0',
    scripts=['distlaw.py'],
)
