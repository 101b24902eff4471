'''The szilardsim setuptools installation configuration
'''
import codecs
import os

import setuptools

import szilardsim


HERE = os.path.abspath(os.path.dirname(__file__))
with codecs.open(os.path.join(HERE, 'README.rst'), encoding='utf-8') as f:
    README = f.read()

setuptools.setup(
    description='Smooth entropies and the work value of information for Szilard boxes',
    name=szilardsim.__name__,
    version=szilardsim.__version__,
    classifiers=[
        'Development Status :: 4 - Beta',
        'Intended Audience :: Education',
        'Intended Audience :: Science/Research',
        'License :: OSI Approved :: MIT License',
        'Natural Language :: English',
        'Programming Language :: Python :: 3',
        'Topic :: Education',
        'Topic :: Scientific/Engineering :: Physics',
        'Topic :: Scientific/Engineering :: Information Analysis',
    ],
    install_requires=['numpy>=1.22', 'pyparsing>=3.0', 'scipy>=1.8',
                      'simpy>=4.0'],
    extras_require={'tests': ['hypothesis>=6.0', 'pytest>=7.0']},
    keywords='Szilard engine smooth entropy min-entropy max-entropy work extraction simpy',
    license='MIT',
    long_description=README,
    packages=setuptools.find_packages(exclude=['docs', 'tests']),
    package_data={
        'szilardsim': ['cases/*.txt'],
    },
    entry_points={
        'console_scripts': ['szilardsim = szilardsim.cli:main'],
    },
)
