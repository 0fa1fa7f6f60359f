"""Weighted limits in quasi-categories, computed on finite simplicial sets."""

__version__ = "0.1.0"
