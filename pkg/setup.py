"""
mbqcmap
=======

mbqcmap simulates and compiles measurement-based quantum
computations. It runs one-way patterns and teleportation gadgets on
statevector and stabilizer engines, rewrites one-way patterns into
teleportation circuits and back, and schedules the two-qubit
measurements that prepare a graph state.
"""

from setuptools import setup, find_packages

__author__ = 'mbqcmap developers'
__email__ = 'mbqcmap@users.noreply.github.com'
__description__ = "Measurement-based quantum computation by mapping"
__license__ = 'BSD (3-clause)'
__version__ = '0.1.0'
__classifiers__ = [
  'Intended Audience :: Science/Research',
  'License :: OSI Approved :: BSD License',
  'Programming Language :: Python :: 3 :: Only',
  'Topic :: Scientific/Engineering :: Physics'
]


def get_required_packages():
    """
    Return required packages
    """
    install_requires = ['numpy >= 1.17.0',
                        'pandas >= 1.0.0',
                        'networkx >= 2.4']
    return install_requires


def get_package_data():
    """
    Return package data

    The golden copy of the procedure A evolution that the
    ``table1`` command compares against.
    """
    package_data = {'mbqcmap': ['data/*.txt']}
    return package_data


if __name__ == '__main__':
    setup(name='mbqcmap',
          maintainer=__author__,
          maintainer_email=__email__,
          description=__description__,
          long_description=__doc__,
          license=__license__,
          version=__version__,
          python_requires='>=3.7',
          install_requires=get_required_packages(),
          packages=find_packages(),
          package_data=get_package_data(),
          entry_points={
              'console_scripts': ['mbqcmap=mbqcmap.cli:main']},
          classifiers=__classifiers__,
          zip_safe=False)
