"""Exact-arithmetic checks for rigidity of Airy local systems."""

__version__ = "0.1.0"
