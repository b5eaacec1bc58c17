"""Trajectory generators: each runs one algorithm and checkpoints spectra."""

from . import exact_cover, grover, primes, shor
from .trajectory import FLEXIBLE_SLACK, Trajectory

__all__ = [
    "FLEXIBLE_SLACK", "Trajectory",
    "exact_cover", "grover", "primes", "shor",
]
