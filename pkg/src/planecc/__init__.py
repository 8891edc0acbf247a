"""Curvature analysis of non-static plane-symmetric spacetimes."""

__version__ = "0.1.0"
