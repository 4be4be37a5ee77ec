"""Graphs of weights for circle actions on oriented 4-manifolds."""

__version__ = "0.1.0"
