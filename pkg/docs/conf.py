# Sphinx configuration for the ghzlocc documentation.
# https://www.sphinx-doc.org/en/master/usage/configuration.html

import os
import sys
from importlib.metadata import version

sys.path.insert(0, os.path.abspath("../src/"))

project = "ghzlocc"
copyright = "2026, ghzlocc developers"
author = "ghzlocc developers"
release = version("ghzlocc")
version = ".".join(release.split(".")[:2])

extensions = [
    "sphinx.ext.mathjax",
    "sphinx.ext.napoleon",
    "sphinx.ext.viewcode",
    "sphinx.ext.intersphinx",
    "autoapi.extension",
]

templates_path = []
exclude_patterns = ["_build"]

master_doc = "index"
html_show_sourcelink = False
add_module_names = False

# docstrings are Google style
napoleon_google_docstring = True
napoleon_numpy_docstring = False

intersphinx_mapping = {
    "python": ("https://docs.python.org/3", None),
    "numpy": ("https://numpy.org/doc/stable", None),
    "scipy": ("https://docs.scipy.org/doc/scipy", None),
    "pandas": ("https://pandas.pydata.org/docs", None),
    "dask": ("https://docs.dask.org/en/stable", None),
}

autoapi_type = "python"
autoapi_dirs = ["../src/ghzlocc"]
autoapi_ignore = ["*/__main__.py", "*/_version.py", "*/cli/*"]
autoapi_options = ["members", "undoc-members", "show-inheritance", "imported-members"]
autoapi_add_toc_tree_entry = False
autoapi_member_order = "bysource"

html_theme = "sphinx_rtd_theme"
