"""Finite-ring laboratory for Jordan n-derivations, Jordan n-centralizers and
Peirce decompositions."""

__version__ = "0.1.0"
