"""Exact length complexes, combinatorial curvature, disk diagrams and
dihedral Artin group machinery."""

__version__ = "0.1.0"
