"""Continued fractions, modular partition vectors, skewed Gauss transfer operators and modular symbols."""

__version__ = "0.1.0"
