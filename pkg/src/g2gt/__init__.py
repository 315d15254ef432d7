"""Gelfand-Tsetlin bases for representations of g2 from A-hypergeometric series."""
__version__ = "0.1.0"
