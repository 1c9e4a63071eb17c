"""Exact Dunkl-operator calculus on hypercomplex subspaces of alternative algebras."""

__version__ = "0.1.0"
