"""torusfill: fillability of contact structures on torus bundles."""

import sys
from os import path

if not hasattr(sys, 'frozen'):
    pkg_dir = path.dirname(__file__)
else:
    # frozen: data ships next to the executable
    pkg_dir = path.join(path.dirname(sys.executable), 'torusfill')
data_dir = path.join(pkg_dir, 'data')

__version__ = '0.1.0'
