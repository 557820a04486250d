"""Named graphs and triangulations used by the tests, the corpus and the CLI examples.

Graph builders return :class:`GraphDocument` objects; when the natural
embedding is known the rotation system is included so no planarity search is
needed downstream.
"""

from __future__ import annotations

import itertools

from .euler_tri import EulerianTriangulation, dualize, primal_from_triangles, rotation_from_triangles
from .graph_core import (
    GraphDocument,
    UndirectedGraph,
    bipartition,
    edge_key,
    embed_planar,
    three_edge_coloring,
)

Triangles = list[tuple[int, int, int]]


def _doc(n: int, edges: list[tuple[int, int]]) -> GraphDocument:
    return GraphDocument(UndirectedGraph(n, sorted({edge_key(u, v) for u, v in edges})))


def cube() -> GraphDocument:
    edges = [(0, 1), (0, 2), (0, 4), (1, 3), (1, 5), (2, 3), (2, 6), (3, 7),
             (4, 5), (4, 6), (5, 7), (6, 7)]
    return _doc(8, edges)


def k4() -> GraphDocument:
    return _doc(4, list(itertools.combinations(range(4), 2)))


def k33() -> GraphDocument:
    return _doc(6, [(a, b) for a in range(3) for b in range(3, 6)])


def prism(k: int) -> GraphDocument:
    """The ``k``-gonal prism (bipartite when ``k`` is even)."""
    edges = []
    for i in range(k):
        edges += [(i, (i + 1) % k), (k + i, k + (i + 1) % k), (i, k + i)]
    return _doc(2 * k, edges)


def hexagonal_prism() -> GraphDocument:
    return prism(6)


def truncated_octahedron() -> GraphDocument:
    """Vertices are the permutations of (0, +-1, +-2); edges join points at distance sqrt 2."""
    pts = set()
    for perm in itertools.permutations((0, 1, 2)):
        for s1 in (1, -1):
            for s2 in (1, -1):
                pts.add(tuple(v * (s1 if v == 1 else s2 if v == 2 else 1) for v in perm))
    pts = sorted(pts)
    edges = []
    for i, p in enumerate(pts):
        for j in range(i + 1, len(pts)):
            q = pts[j]
            if sum((a - b) ** 2 for a, b in zip(p, q)) == 2:
                edges.append((i, j))
    return _doc(len(pts), edges)


# ---------------------------------------------------------------------------
# Triangulations, given as counterclockwise face lists
# ---------------------------------------------------------------------------


def octahedron_faces() -> Triangles:
    """Outer triangle 0,1,2; inner triangle 3,4,5 with 3 near edge 01."""
    return [
        (0, 2, 1),  # outer face, seen from outside
        (0, 1, 3), (1, 2, 4), (2, 0, 5),
        (1, 4, 3), (2, 5, 4), (0, 3, 5),
        (3, 4, 5),
    ]


def delta11_faces() -> Triangles:
    """K_{2,3} with two adjacent vertices added inside each quadrilateral face.

    Poles 0 and 1, equator 2, 3, 4; face ``i`` is the quadrilateral
    0, e_i, 1, e_{i+1} and receives ``p`` (joined to 0, e_i, e_{i+1}) and
    ``q`` (joined to 1, e_i, e_{i+1}).
    """
    faces: Triangles = []
    eq = [2, 3, 4]
    nxt = 5
    for i in range(3):
        x, y = eq[i], eq[(i + 1) % 3]
        p, q = nxt, nxt + 1
        nxt += 2
        # quadrilateral 0 -> x -> 1 -> y seen counterclockwise from outside
        faces += [(0, x, p), (x, q, p), (x, 1, q), (1, y, q), (y, p, q), (y, 0, p)]
    return faces


def insert_octahedron(faces: Triangles, face: tuple[int, int, int], first_new: int) -> Triangles:
    """Nest an octahedron inside ``face`` (three new vertices)."""
    a, b, c = face
    d, e, f = first_new, first_new + 1, first_new + 2
    out = [t for t in faces if not _same_face(t, face)]
    if len(out) != len(faces) - 1:
        raise ValueError(f"{face} is not a face")
    out += [(a, b, d), (b, c, e), (c, a, f), (b, e, d), (c, f, e), (a, d, f), (d, e, f)]
    return out


def _same_face(t: tuple[int, int, int], f: tuple[int, int, int]) -> bool:
    a, b, c = t
    return f in ((a, b, c), (b, c, a), (c, a, b))


def nested_octahedron_faces(depth: int = 1, white_inside: bool = False) -> Triangles:
    """Octahedra nested ``depth`` times, each inside a face of the previous one.

    With the root face ``(0, 2, 1)`` white, the default nests into blue faces
    (odd-parity separating triangles); ``white_inside`` nests into white faces
    (even parity).
    """
    faces = octahedron_faces()
    nxt = 6
    target = (1, 4, 3) if white_inside else (3, 4, 5)
    for _ in range(depth):
        faces = insert_octahedron(faces, target, nxt)
        # the new inner face (d, e, f) keeps the color of the carved face
        target = (nxt, nxt + 1, nxt + 2)
        nxt += 3
    return faces


def primal_doc(faces: Triangles) -> GraphDocument:
    g, rotations = primal_from_triangles(faces)
    return GraphDocument(g, rotations)


def eulerian_from_faces(faces: Triangles, root_vertex: int = 0) -> EulerianTriangulation:
    """Dual triangulation (with rainbow colors) of the cubic graph dual to ``faces``."""
    doc = primal_doc(faces)
    emb = embed_planar(doc.graph, doc.rotations)
    bip = bipartition(doc.graph)
    return dualize(emb, bip, three_edge_coloring(emb, bip), root_vertex)


def delta11_primal() -> GraphDocument:
    return primal_doc(delta11_faces())


def validate_faces(faces: Triangles) -> None:
    """Raise if the face list is not a closed triangulated sphere."""
    rot = rotation_from_triangles(faces)
    v = len(rot)
    e = sum(len(r) for r in rot.values()) // 2
    if v - e + len(faces) != 2:
        raise ValueError("face list is not a sphere")


# ---------------------------------------------------------------------------
# 2-connected families for the simple mode
# ---------------------------------------------------------------------------


_CUBE_EDGES = cube().graph.edges


def cube_chain(k: int) -> GraphDocument:
    """``k`` cubes in a row; consecutive cubes are joined through a 4-cycle.

    In each link one edge is removed from both cubes and the four freed
    endpoints are joined crosswise, so the two new edges form a 2-edge cut
    and the SPQR tree has an S node between the two cube R nodes.
    Cube ``i`` loses edge (0, 1) towards its right neighbour and edge
    (6, 7) towards its left neighbour.
    """
    if k < 1:
        raise ValueError("need at least one cube")
    edges = []
    for i in range(k):
        base = 8 * i
        for u, v in _CUBE_EDGES:
            if i < k - 1 and (u, v) == (0, 1):
                continue
            if i > 0 and (u, v) == (6, 7):
                continue
            edges.append((base + u, base + v))
    for i in range(k - 1):
        a, b = 8 * i, 8 * (i + 1)
        edges += [(a + 0, b + 7), (a + 1, b + 6)]
    return _doc(8 * k, edges)


def two_cubes() -> GraphDocument:
    return cube_chain(2)


def three_cubes_two_hubs() -> GraphDocument:
    """Three cubes, each missing edge (0, 1), hung between hub vertices 0 and 1.

    Removing the two hubs leaves three components, so the SPQR tree has a
    P node with three S-node neighbours.
    """
    edges = []
    hub_top, hub_bottom = 0, 1
    for i in range(3):
        base = 2 + 8 * i
        for u, v in _CUBE_EDGES:
            if (u, v) == (0, 1):
                continue
            edges.append((base + u, base + v))
        edges += [(hub_top, base + 0), (hub_bottom, base + 1)]
    return _doc(26, edges)


NAMED = {
    "cube": cube,
    "k4": k4,
    "k33": k33,
    "hexagonal_prism": hexagonal_prism,
    "truncated_octahedron": truncated_octahedron,
    "delta11_primal": delta11_primal,
    "two_cubes": two_cubes,
    "three_cubes_two_hubs": three_cubes_two_hubs,
}
