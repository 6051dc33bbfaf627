"""Executable model-structure constructions on finite categories, finite graphs
and truncated semi-simplicial sets."""

__version__ = "0.1.0"
