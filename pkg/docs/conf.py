#!/usr/bin/env python
# -*- coding: utf-8 -*-
#
# membranenoise documentation build configuration file
#
# This file is execfile()d with the current directory set to its
# containing dir.

import os
import sys
from datetime import datetime

from m2r import MdInclude

# the package lives one level up
sys.path.insert(0, os.path.abspath(".."))

# -- General configuration ------------------------------------------------

# generate autosummary even if no references
autosummary_generate = False
autodoc_default_flags = ["members", "inherited-members"]
add_module_names = True

extensions = [
    "sphinx.ext.todo",
    "sphinx.ext.autodoc",
    "sphinx.ext.napoleon",
    "sphinxarg.ext",
    "sphinx.ext.intersphinx",
    "sphinx.ext.doctest",
    "sphinx.ext.mathjax",
    "numpydoc",
    "recommonmark",
]

numpydoc_show_class_members = False

# The suffix(es) of source filenames.
source_suffix = ".rst"

# The master toctree document.
master_doc = "index"

# General information about the project.
project = "membranenoise"
copyright = "2024-" + datetime.today().strftime("%Y") + ", The membranenoise developers"
author = "The membranenoise developers"

# The short X.Y version.
import membranenoise.util as mn_util

version = mn_util.version()[0].replace("v", "").split("+")[0]
# The full version, including alpha/beta/rc tags.
release = version

language = "en"

exclude_patterns = ["_build", "Thumbs.db", ".DS_Store"]

# The name of the Pygments (syntax highlighting) style to use.
pygments_style = "sphinx"

# If true, `todo` and `todoList` produce output, else they produce nothing.
todo_include_todos = True


# -- Options for HTML output ----------------------------------------------

import sphinx_rtd_theme

html_theme = "sphinx_rtd_theme"


def setup(app):
    # from m2r to make `mdinclude` work
    app.add_config_value("no_underscore_emphasis", False, "env")
    app.add_config_value("m2r_parse_relative_links", False, "env")
    app.add_config_value("m2r_anonymous_references", False, "env")
    app.add_config_value("m2r_disable_inline_math", False, "env")
    app.add_directive("mdinclude", MdInclude)


# Output file base name for HTML help builder.
htmlhelp_basename = "membranenoisedoc"

# -- Options for LaTeX output ---------------------------------------------

latex_documents = [
    (
        master_doc,
        "membranenoise.tex",
        "membranenoise Documentation",
        author,
        "manual",
    ),
]

# -- Options for manual page output ---------------------------------------

man_pages = [(master_doc, "membranenoise", "membranenoise Documentation", [author], 1)]

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "pandas": ("https://pandas.pydata.org/pandas-docs/stable", None),
    "joblib": ("https://joblib.readthedocs.io/en/latest", None),
}
