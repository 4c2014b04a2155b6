"""Planar binary trees, loop graphs and the recursion for correlation functions."""

__version__ = "0.1.0"
