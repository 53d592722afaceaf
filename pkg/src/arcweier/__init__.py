"""Exact Weierstrass division and finite presentations of arc-space strata, checked over finite fields."""

__version__ = "0.1.0"
