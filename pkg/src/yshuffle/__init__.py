"""Exact computations in the additive shuffle algebra of a quiver."""

__version__ = "0.1.0"
