"""Exact calculator for secant plane divisor classes on moduli of curves."""

from .exact import Poly, TruncatedSeries
from .genfun import n_d, p_coeff, p_series, z_series
from .hypergeom import p_hyper
from .moduli import DivisorClass, sec_class
from .relations import CoeffBundle, solve_coefficients

__version__ = "0.1.0"

__all__ = [
    "CoeffBundle", "DivisorClass", "Poly", "TruncatedSeries", "n_d", "p_coeff", "p_hyper",
    "p_series", "sec_class", "solve_coefficients", "z_series",
]
