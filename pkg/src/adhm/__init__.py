"""Exact ADHM data, tensor products, current algebras and point counts."""

__version__ = "0.1.0"
