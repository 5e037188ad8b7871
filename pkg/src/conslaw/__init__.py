"""Symbolic and numerical toolkit for conservation laws of 3-D PDE systems."""

__version__ = "0.1.0"
