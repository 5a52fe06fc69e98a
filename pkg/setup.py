"""
Setuptools based setup module
"""
from setuptools import setup, find_packages

setup(
    name='rcm_tracker',
    version='0.1.0',
    description='Kinematics, encoder decoding, validation and gesture metrics for a 4-DoF laparoscopic tracking device.',
    long_description=open('README.rst').read(),

    url='https://github.com/rcm-tracker/rcm_tracker',
    author='rcm_tracker developers',
    license='BSD',

    classifiers=[
        'Development Status :: 3 - Alpha',
        'Topic :: Scientific/Engineering :: Medical Science Apps.',
        'License :: OSI Approved :: BSD License',
        'Intended Audience :: Science/Research',
        'Operating System :: OS Independent',
        'Programming Language :: Python :: 3',
        'Programming Language :: Python :: 3.9',
        'Programming Language :: Python :: 3.10',
        'Programming Language :: Python :: 3.11',
        'Programming Language :: Python :: 3.12'
    ],

    keywords='laparoscopy motion-tracking kinematics',
    packages=find_packages(exclude=["*tests*", "*docs*"]),
    install_requires=[
        'pyiron_base==0.10.10',
        'numpy==1.26.4',
        'pandas==2.2.3',
        'scipy==1.13.1',
        'pyyaml==6.0.2',
    ],
    entry_points={
        'console_scripts': [
            'rcm-tracker=rcm_tracker.cli.cli:main',
        ],
    },
)
