"""Gorenstein-projective modules and Cohen-Macaulay Auslander algebras of string algebras."""

__version__ = "0.1.0"
