"""Exact computations around Magnus commutators, PBW maps and free Lie algebras."""

__version__ = "0.1.0"
