"""Exact computations for linear and affine Poisson structures in dimensions 3 and 4."""

__version__ = "0.1.0"
