"""Exact major-index generating functions for skew staircase tableaux."""

__version__ = "0.1.0"
