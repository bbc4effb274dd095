"""Exact and floating-point checks of braid, Yang-Baxter and Brauer-algebra
relations for operators built from the swap and its partial transpose."""

__version__ = "0.1.0"
