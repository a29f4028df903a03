import setuptools

requirements = open('requirements.txt').read().split('\n')

setuptools.setup(
    name='distlawlib',
    version='0.1.0',
    description='Exact classification of distributive laws between '
                'the Com and Lie operads',
    install_requires=requirements,
    packages=['distlawlib'],
    entry_points={
        'console_scripts': ['distlaw=distlawlib.cli:main'],
    },
)
