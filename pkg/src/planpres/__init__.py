"""Planar presentations of 3-manifolds in the 3-sphere.

A presentation is a bottom-up word of Morse events for the boundary of a
compact 3-manifold M.  The package sweeps such words, builds the
connectivity graph of their cut levels, decides the tree criterion, and plans
re-embeddings of M whose complement is a union of handlebodies.
"""
from .kernels import BACKEND
from .sweep import (
    ParseError,
    Presentation,
    PresentationError,
    SimulationError,
    parse_presentation,
    simulate,
)

__version__ = "0.1.0"

__all__ = [
    "BACKEND",
    "ParseError",
    "Presentation",
    "PresentationError",
    "SimulationError",
    "parse_presentation",
    "simulate",
    "__version__",
]
