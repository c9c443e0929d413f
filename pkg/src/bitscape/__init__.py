"""Exhaustive analysis and SVG visualization of pseudo-Boolean fitness
landscapes: local optima, basin networks, search trajectories."""

__version__ = "0.1.0"

from .bitspace import Bitstring, HingedCoord, dec, enumerate_space, hamming, hinge, neighbors
from .problems import FitnessLandscape, NKModel, make_nk, make_onemax, make_sin2dec

__all__ = [
    "Bitstring",
    "HingedCoord",
    "dec",
    "enumerate_space",
    "hamming",
    "hinge",
    "neighbors",
    "FitnessLandscape",
    "NKModel",
    "make_nk",
    "make_onemax",
    "make_sin2dec",
    "__version__",
]
