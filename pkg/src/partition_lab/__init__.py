"""Finite laboratory for path partition relations, the branch coloring,
the finite-condition forcing poset and the polarized diagonal coloring."""

__version__ = "0.1.0"
