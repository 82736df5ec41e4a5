"""Exact computations for framed Drinfeld-Kohno Lie algebras, graded
Goldman-Turaev operations and Kashiwara-Vergne equations, truncated at a
finite weight over the rationals."""

__version__ = "0.1.0"
