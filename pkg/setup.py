from setuptools import setup, find_packages

with open('README.rst') as file:
    long_description = file.read()

setup(
    name='twophoton',
    version='0.1.0',
    packages=find_packages(exclude=['tests']),
    license='MIT',
    long_description=long_description,
    keywords=['quantum rabi model', 'two-photon', 'spectrum', 'bargmann'],
    install_requires=[
        'numpy>=1.22',
    ],
    extras_require={
        'test': ['pytest', 'scipy'],
    },
    entry_points={
        'console_scripts': [
            'twophoton = twophoton.__main__:cli'
         ]
    },
    classifiers=[
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3.8',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12',
        'Topic :: Scientific/Engineering :: Physics',
    ],
)
