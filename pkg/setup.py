import setuptools

with open('README.md', 'r') as f:
    readme_text = f.read()

setuptools.setup(
    name='torusfill',
    version='0.1.0',
    description='Fillability of contact structures on torus bundles',
    long_description=readme_text,
    long_description_content_type='text/markdown',
    packages=setuptools.find_packages(exclude=['tests']),
    package_data={'torusfill': ['data/*.moves', 'data/*.json']},
    python_requires='>=3.9',
    install_requires=['sympy>=1.14'],
    extras_require={'test': ['pytest', 'jsonschema']},
    entry_points={
        'console_scripts': ['torusfill = torusfill.cli:main'],
    },
    classifiers=[
        'Programming Language :: Python :: 3',
        'License :: OSI Approved :: GNU General Public License v3 (GPLv3)',
        'Operating System :: OS Independent',
        'Topic :: Scientific/Engineering :: Mathematics',
    ],
)
