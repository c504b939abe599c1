"""Explicit congruence invariants for the p-rank of the class group of Q(N^(1/p))."""

__version__ = "0.1.0"
