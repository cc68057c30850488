"""Exact total-nonnegativity toolkit for Hurwitz-type, Toeplitz and J-factor matrices."""

__version__ = "0.1.0"
