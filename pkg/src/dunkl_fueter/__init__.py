"""Exact Dunkl-Clifford analysis on polynomials and checks of Fueter-type theorems."""

__version__ = "0.1.0"
