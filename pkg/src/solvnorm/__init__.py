"""Normalizers of connected solvable spherical subgroups, computed combinatorially."""

__version__ = "0.1.0"
