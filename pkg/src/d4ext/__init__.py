"""Computational toolkit for extending D(4)-triples by a smaller element."""

__version__ = "0.1.0"
