"""Exact-arithmetic workbench for group-graded rings."""

__version__ = "0.1.0"
