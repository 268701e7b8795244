"""Sums of triangular numbers: sieves, escalation, and quadratic form checks."""

__version__ = "0.1.0"
