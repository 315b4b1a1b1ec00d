"""Domino - exact double domination, double Slater bounds and domatic partitions."""

__version__ = "0.3.0"
