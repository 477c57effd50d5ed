"""Exact computations with quadratic Poisson tori and their unipotent automorphisms."""

__version__ = "0.1.0"
