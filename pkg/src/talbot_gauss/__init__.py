"""Gauss optics, fractional Talbot amplitudes, Gauss sums and the finite
Weil representation, in exact arithmetic where it matters."""

__version__ = "0.1.0"
