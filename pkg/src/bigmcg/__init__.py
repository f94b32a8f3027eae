"""Exact shadow computations in mapping class groups of the surfaces S(n)."""

__version__ = "0.1.0"
