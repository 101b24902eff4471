# -*- coding: utf-8 -*-
#
# szilardsim documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.

import sys
import os

sys.path.insert(0, os.path.abspath('.'))
sys.path.insert(0, os.path.abspath('..'))

import szilardsim

# -- General configuration ------------------------------------------------

extensions = [
    'sphinx.ext.autodoc',
    'sphinx.ext.autosummary',
    'sphinx.ext.intersphinx',
    'sphinx.ext.todo',
    'sphinx.ext.mathjax',
    'sphinx.ext.viewcode',
]

intersphinx_mapping = {'python': ('https://docs.python.org/3', None),
                       'numpy': ('https://numpy.org/doc/stable', None),
                       'simpy': ('https://simpy.readthedocs.io/en/latest', None)}

templates_path = ['_templates']
source_suffix = '.rst'
master_doc = 'index'

project = 'szilardsim'
copyright = '2026, szilardsim developers'

version = szilardsim.__version__
release = szilardsim.__version__

exclude_patterns = ['_build']
pygments_style = 'sphinx'

# -- Options for HTML output ----------------------------------------------

html_theme = 'default'
htmlhelp_basename = 'szilardsimdoc'

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
  ('index', 'szilardsim.tex', 'szilardsim Documentation',
   'szilardsim developers', 'manual'),
]

man_pages = [
    ('index', 'szilardsim', 'szilardsim Documentation',
     ['szilardsim developers'], 1)
]
