"""Exact enumeration of integral Apollonian packings and the height staircase."""

__version__ = "0.1.0"
