"""Finite Chu constructions over setoids, with exhaustive verifiers."""

__version__ = "0.1.0"
