"""Codes over vector-space alphabets, symmetrized weight compositions and the extension property."""

__version__ = "0.1.0"
