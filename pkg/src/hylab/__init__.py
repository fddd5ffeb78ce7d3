"""Laplace transforms along rays and curves, with norm and inequality checks."""

__version__ = "0.1.0"
