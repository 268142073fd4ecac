"""Selberg zeta functions, scattering determinants, and their zero-counting laws
for explicit finite-volume hyperbolic surfaces."""

__version__ = "0.1.0"
