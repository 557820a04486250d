"""Orthogonal polyhedra from cubic bipartite plane graphs.

The package decides whether a cubic planar graph is the skeleton of a corner
polyhedron, an xyz polyhedron or a simple orthogonal polyhedron, and builds
integer coordinates when it is.  Every construction has a validator or a
brute-force oracle alongside it.
"""

from __future__ import annotations

from .errors import InputError, NotRepresentable, OrthoError
from .geometry import OrthoPolyhedron, isometric_project, parse_polyhedron, validate_polyhedron
from .graph_core import GraphDocument, UndirectedGraph, parse_document
from .pipeline import PipelineConfig, Realization, classify, prepare, realize

__version__ = "0.1.0"

__all__ = [
    "GraphDocument",
    "InputError",
    "NotRepresentable",
    "OrthoError",
    "OrthoPolyhedron",
    "PipelineConfig",
    "Realization",
    "UndirectedGraph",
    "classify",
    "isometric_project",
    "parse_document",
    "parse_polyhedron",
    "prepare",
    "realize",
    "validate_polyhedron",
]
