"""Exact evaluation of low-dimensional topological field theories."""

__version__ = "0.1.0"
