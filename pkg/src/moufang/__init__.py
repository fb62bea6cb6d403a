"""Exact computations for Moufang loops, their tangent Mal'tsev algebras and
the Lie algebra generated by infinitesimal Moufang translations."""

__version__ = "0.1.0"
