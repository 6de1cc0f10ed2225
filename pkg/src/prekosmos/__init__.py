"""Finite groups and commutative Hopf algebras over Q, their representation categories,
reconstruction from fibre functors, and twisting by torsors, all checked with exact arithmetic."""
from .suite import VERSION as __version__

__all__ = ["__version__"]
