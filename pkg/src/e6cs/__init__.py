"""Eigenfunctions of the trigonometric Calogero-Sutherland model for E6 in
fundamental-character variables, with exact coefficients in the coupling k."""

from .algebra import K, KappaPoly, KappaRational, PoleError, ZPoly

__version__ = "0.1.0"

__all__ = ["K", "KappaPoly", "KappaRational", "PoleError", "ZPoly", "__version__"]
