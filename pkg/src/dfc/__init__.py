"""Annihilating differential operators for compositions of D-finite and algebraic functions."""

__version__ = "0.1.0"
