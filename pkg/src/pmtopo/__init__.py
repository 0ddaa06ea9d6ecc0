"""Exact computations for polyhedral products over simplicial complexes."""

__version__ = "0.1.0"
