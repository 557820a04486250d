"""Simple orthogonal polyhedra for 2-connected graphs by gluing atoms along edges."""

from __future__ import annotations

import networkx as nx

from .errors import NotBiconnected, NotPolyhedral
from .geometry import BlockAssembly, Face, OrthoPolyhedron, Point
from .graph_core import (
    GraphDocument,
    UndirectedGraph,
    bipartition,
    edge_key,
    embed_planar,
    require_connected,
    require_cubic,
    trace_faces,
)
from .spqr import SplitStep, _face_left, atomic_decomposition, build_spqr


def _atom_coordinates(rot: dict[int, list[int]], hinge: int) -> dict[int, Point]:
    """xyz realization of a 3-connected atom with ``hinge`` hidden at the origin."""
    from .pipeline import prepare, realize_xyz

    verts = sorted(rot)
    idx = {v: i for i, v in enumerate(verts)}
    edges = sorted({edge_key(idx[v], idx[w]) for v in verts for w in rot[v]})
    g = UndirectedGraph(len(verts), edges)
    rotations = [[idx[w] for w in rot[v]] for v in verts]
    prep = prepare(GraphDocument(g, rotations), idx[hinge])
    poly = realize_xyz(prep, "compact").poly
    return {v: poly.vertices[idx[v]] for v in verts}


def realize_simple(doc: GraphDocument) -> "Realization":  # noqa: F821
    """Realize a 2-connected cubic bipartite plane graph without P nodes.

    Atoms are peeled off the SPQR tree; the last one is realized directly
    and the others are glued back in reverse order, each into the wedge of
    the edge that replaced it.
    """
    from .pipeline import Realization

    g = doc.graph
    require_connected(g)
    require_cubic(g)
    bipartition(g)
    emb = embed_planar(g, doc.rotations, doc.outer_face)
    if not nx.is_biconnected(g.to_networkx()):
        raise NotBiconnected("graph is not 2-connected")
    dec = atomic_decomposition(build_spqr(g), emb.rotation)
    assert dec.core_rotation is not None
    assembly = BlockAssembly()
    assembly.add_block(_atom_coordinates(dec.core_rotation, dec.core[0]))
    for step in reversed(dec.steps):
        glue_component_at_edge(assembly, step)
    coords = assembly.coordinates()
    pts = [coords[v] for v in range(g.n)]
    faces = []
    for cycle in emb.faces:
        axes = [a for a in range(3) if len({pts[v][a] for v in cycle}) == 1]
        if len(axes) != 1:
            raise NotPolyhedral(f"face {cycle} did not come out planar")
        faces.append(Face(axes[0], pts[cycle[0]][axes[0]], list(cycle)))
    return Realization(OrthoPolyhedron("simple", pts, faces, None))


def glue_component_at_edge(assembly: BlockAssembly, step: SplitStep) -> None:
    """Glue the atom of ``step`` back in place of the remainder edge ``(p, q)``."""
    assert step.atom_rotation is not None and step.face_pq is not None and step.face_qp is not None
    child = _atom_coordinates(step.atom_rotation, step.u)
    face_wu = _face_left(step.atom_rotation, step.w, step.u)
    face_uw = _face_left(step.atom_rotation, step.u, step.w)
    assembly.glue_at_edge(
        step.p, step.q, step.face_pq, step.face_qp, child, step.u, step.w, face_wu, face_uw
    )


__all__ = ["realize_simple", "glue_component_at_edge", "trace_faces"]
