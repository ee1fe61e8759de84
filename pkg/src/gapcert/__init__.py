"""Percentile solutions and probabilistic optimality-gap certificates."""

__version__ = "0.1.0"
