"""Exact enumeration of planar Eulerian orientations."""
__version__ = "0.1.0"
