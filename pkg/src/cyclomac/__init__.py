"""Exact Macdonald functions for wreath products of symmetric groups with
cyclic groups, over the field Q(zeta_e)(q, t)."""

__version__ = "0.1.0"
