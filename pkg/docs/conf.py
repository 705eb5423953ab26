#!/usr/bin/env python3
#
# odelin documentation build configuration file

import os
import sys

sys.path.insert(0, os.path.abspath('..'))

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'odelin'
copyright = '2026, odelin developers'

version = '0.3'
release = '0.3'

language = 'en'
exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = []
htmlhelp_basename = 'odelindoc'

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (master_doc, 'odelin.tex', 'odelin Documentation', 'odelin developers', 'manual'),
]

# -- Options for manual page output ---------------------------------------

man_pages = [
    (master_doc, 'odelin', 'odelin Documentation', ['odelin developers'], 1)
]

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'sympy': ('https://docs.sympy.org/latest', None),
}
