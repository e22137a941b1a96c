#!/usr/bin/env python3
# -*- coding: utf-8 -*-
#
# Configuration file for the Sphinx documentation builder of pdwalk package.
#
# This file does only contain a selection of the most common options. For a
# full list see the documentation:
# http://www.sphinx-doc.org/en/master/config

# -- Path setup --------------------------------------------------------------

import os
import sys
sys.path.insert(0, os.path.abspath('../../'))

import pdwalk

# -- Project information -----------------------------------------------------

project = 'pdwalk'
copyright = 'since 2021, pdwalk developers'
author = 'pdwalk developers'

# The short X.Y version
version = pdwalk.__version__
# The full version, including alpha/beta/rc tags
release = pdwalk.__version__

# -- General configuration ---------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.intersphinx',
    'sphinx.ext.coverage',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'manual'
exclude_patterns = []
pygments_style = 'sphinx'

# Keep members in source order, it follows the data flow of each module.
autodoc_member_order = 'bysource'

# -- Options for HTML output -------------------------------------------------

html_theme = 'sphinx_rtd_theme'
html_static_path = []
htmlhelp_basename = 'pdwalkdoc'

# -- Options for manual page output ------------------------------------------

man_pages = [
    (master_doc, 'pdwalk', 'pdwalk Documentation',
     [author], 1)
]

# -- Extension configuration -------------------------------------------------

intersphinx_mapping = {
    'python': ('https://docs.python.org/3', None),
    'numpy': ('https://numpy.org/doc/stable/', None),
    'scipy': ('https://docs.scipy.org/doc/scipy/', None),
}
