"""Homological invariants of finite-dimensional algebras over prime fields.

Computes syzygies, projective/injective/global dimension, Krull-Schmidt
decompositions, endomorphism algebras, Igusa-Todorov functions and
finitistic-dimension bounds for algebras given by quivers with relations
or by structure constants over F_p.
"""

__version__ = "0.1.0"
