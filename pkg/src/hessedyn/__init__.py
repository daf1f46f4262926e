"""Exact and numerical dynamics of the Hesse pencil maps."""

__version__ = "0.1.0"
