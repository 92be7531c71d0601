"""Coxeter groups of hyperbolic polyhedra: growth series, spectral bounds and
certificates that p_c < p_u for Bernoulli percolation on their Cayley graphs."""
from .coxeter import CoxeterMatrix, parse_coxeter_input

__all__ = ["CoxeterMatrix", "parse_coxeter_input"]
__version__ = "0.1.0"
