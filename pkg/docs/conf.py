# Sphinx configuration for the sumfree-explorer documentation.

import sys
from pathlib import Path

# autodoc imports the package from the repository root when it is not
# installed
sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

project = 'Sum-free Explorer'
copyright = '2026'
author = 'sumfree-explorer developers'

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.mathjax',
]
autodoc_member_order = 'bysource'
exclude_patterns = ['_build', 'README.md']

html_theme = 'alabaster'
