"""Exact engine for generalized q-Schur algebras, their inverse system, and
the quantized enveloping algebra realized inside the inverse limit."""

__version__ = "0.1.0"
