#!/usr/bin/env python
from setuptools import setup, find_packages

with open('README.md', 'r') as f:
    long_description = f.read()

with open('requirements.txt', 'r') as f:
    install_requires = f.read().strip().split()

with open('requirements-test.txt', 'r') as f:
    tests_require = f.read().strip().split()

setup(name='purindex',
      version='1.0.0',
      long_description=long_description,
      long_description_content_type='text/markdown',
      packages=find_packages(exclude=['tests', 'tests.*']),
      entry_points={
          'console_scripts': ['purindex = purindex.cli:main'],
      },
      classifiers=['Development Status :: 4 - Beta',
                   'Environment :: Console',
                   'Intended Audience :: Science/Research',
                   'Natural Language :: English',
                   'Operating System :: OS Independent',
                   'Programming Language :: Python :: 3.8',
                   'Topic :: Scientific/Engineering :: Mathematics'],
      python_requires='>=3.8',
      install_requires=install_requires,
      extras_require={'test': tests_require},
      )
