"""Exact Virasoro vertex algebra engine, eta-bar calculus and C2 certificate pipeline."""

__version__ = "0.1.0"
