"""Exact-arithmetic toolkit for cofree combinatorial Hopf algebras.

The package computes with Hopf algebra structures on tensor and symmetric
coalgebras over exact rationals: multibrace/brace structures and their
relation checkers, free dipterous and dendriform algebras on planar trees,
symmetric multibraces and pre-Lie algebras on rooted trees, the
Grossman-Larson / Connes-Kreimer pair, and concrete examples (Faa di Bruno,
quasi-symmetric functions, the Malvenuto-Reutenauer algebra).  Everything is
degree-truncated and every identity is checked by exact equality.
"""

from hopfalg.core import DegreeBoundError, LinComb, SymWord, TensorWord

__all__ = ["DegreeBoundError", "LinComb", "SymWord", "TensorWord"]
__version__ = "0.1.0"
