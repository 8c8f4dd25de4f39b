"""Exact verification engine for twisted Hopf algebras, kappa-Minkowski
module algebras and their DSR phase spaces."""

__version__ = "0.1.0"
