"""Cubical bookkeeping for higher order chain complexes and higher Ext.

Submodules:

words        the chain category of words in s and J
cubical      left cubical sets and the cubical thickening of the chain category
balls        left cubical balls, orientation signs, equivalence and search
obstruction  symbolic obstruction calculus and the Hauptlemma derivations
homalg       graded algebras, minimal resolutions and primary Ext
tracks       chain-level tracks, lifting, Toda brackets, higher differentials
"""
from . import balls, cubical, homalg, obstruction, spectral, tracks, words

__all__ = ["balls", "cubical", "homalg", "obstruction", "spectral", "tracks", "words"]
__version__ = "0.1.0"
