"""Dominant dimension of endomorphism algebras of permutation modules over GF(p)."""

__version__ = "0.1.0"
