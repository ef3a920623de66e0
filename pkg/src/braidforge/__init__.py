"""Exact braid-closure invariants and the unit-Jones search toolkit."""

__version__ = "0.1.0"
