"""Causal-geometry feasibility analysis and simulation of state summoning."""

__version__ = "0.1.0"
