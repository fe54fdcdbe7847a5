"""Exact orbit growth for oligomorphic groups built from covers of reducts of the rationals."""

__version__ = "0.1.0"
