"""Exact computations around Koszul duality in modular representation theory:
affine Weyl group combinatorics, the extended affine braid group acting on a
truncated Hecke module, linear Koszul duality for dg-modules over S(V) and
Λ(V), and Koszulity tests for finite-dimensional graded algebras."""

__version__ = "0.1.0"
