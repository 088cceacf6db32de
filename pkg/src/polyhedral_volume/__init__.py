"""Polyhedral-volume: realizability, decomposition and volume bounds
for non-obtuse hyperbolic polyhedra.
"""

from importlib.metadata import version

__version__ = version("polyhedral-volume")
