"""Exact q-integration over order polytopes."""

__version__ = "0.1.0"
