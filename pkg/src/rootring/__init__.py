"""Exact computation with Peirce-decomposed rings over finite coefficients,
their elementary linear groups, and reconstruction of the ring from
root-subgroup commutator data."""

__version__ = "0.1.0"
