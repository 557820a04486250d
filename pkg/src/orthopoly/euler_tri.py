"""Dual Eulerian triangulations, separating triangles and 4-connected components.

A :class:`PlaneTri` is an embedded triangulation keyed by arbitrary integer
vertex ids.  Its rotations follow the package convention (counterclockwise,
face on the left), so the triangle on the left of the dart ``a -> b`` is
``(a, b, succ_a(b))``.  Every edge carries a rainbow color 0/1/2 and the
white/blue coloring of triangles is derived from it: the cyclic order of the
edge colors around a triangle is the same for all triangles of one color.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import NotPolyhedral, NotSeparating
from .graph_core import (
    EdgeColoring3,
    PlanarEmbedding,
    UndirectedGraph,
    VertexBipartition,
    edge_key,
)

WHITE, BLUE = 0, 1


def canonical_face(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Rotate a cyclically ordered triple so that its smallest vertex comes first."""
    if a < b and a < c:
        return (a, b, c)
    if b < c:
        return (b, c, a)
    return (c, a, b)


class PlaneTri:
    """Mutable embedded triangulation with rainbow edge colors and a root face."""

    def __init__(
        self,
        rot: dict[int, list[int]],
        ecol: dict[tuple[int, int], int],
        root: tuple[int, int, int],
    ) -> None:
        self.rot = rot
        self.ecol = ecol
        self.root = root

    # -- local queries ------------------------------------------------------

    def succ(self, v: int, u: int) -> int:
        r = self.rot[v]
        i = r.index(u) + 1
        return r[i] if i < len(r) else r[0]

    def pred(self, v: int, u: int) -> int:
        r = self.rot[v]
        return r[r.index(u) - 1]

    def third(self, a: int, b: int) -> int:
        """Apex of the triangle on the left of the dart ``a -> b``."""
        return self.succ(a, b)

    def degree(self, v: int) -> int:
        return len(self.rot[v])

    def adjacent(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.ecol

    def color(self, u: int, v: int) -> int:
        return self.ecol[edge_key(u, v)]

    def sign(self, a: int, b: int, c: int) -> int:
        """1 or 2: the step between consecutive edge colors of triangle ``abc``."""
        return (self.ecol[edge_key(b, c)] - self.ecol[edge_key(a, b)]) % 3

    @property
    def root_sign(self) -> int:
        return self.sign(*self.root)

    def is_white(self, a: int, b: int, c: int) -> bool:
        return self.sign(a, b, c) == self.root_sign

    def arc(self, v: int, start: int, stop: int) -> list[int]:
        """Neighbours of ``v`` strictly between ``start`` and ``stop`` going counterclockwise."""
        r = self.rot[v]
        i = r.index(start)
        j = r.index(stop)
        if i < j:
            return r[i + 1 : j]
        return r[i + 1 :] + r[:j]

    # -- global views -------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return list(self.rot)

    def edges(self) -> list[tuple[int, int]]:
        return list(self.ecol)

    def faces(self) -> list[tuple[int, int, int]]:
        out = []
        for v, r in self.rot.items():
            k = len(r)
            for i, u in enumerate(r):
                w = r[i + 1] if i + 1 < k else r[0]
                if v < u and v < w:
                    out.append((v, u, w))
        return out

    def is_face(self, a: int, b: int, c: int) -> bool:
        """True if ``a, b, c`` (in any order) bound a face."""
        if not (self.adjacent(a, b) and self.adjacent(b, c) and self.adjacent(a, c)):
            return False
        return self.third(a, b) == c or self.third(b, a) == c

    def oriented_face(self, a: int, b: int, c: int) -> tuple[int, int, int]:
        """Return the face on vertex set ``{a, b, c}`` in its counterclockwise order."""
        if self.third(a, b) == c:
            return (a, b, c)
        if self.third(b, a) == c:
            return (b, a, c)
        raise NotSeparating(f"{(a, b, c)} is not a face")

    def copy(self) -> PlaneTri:
        return PlaneTri({v: list(r) for v, r in self.rot.items()}, dict(self.ecol), self.root)

    def sub(self, keep: set[int], root: tuple[int, int, int]) -> PlaneTri:
        """Restrict to a vertex subset whose induced rotations stay triangulated."""
        rot = {v: [w for w in self.rot[v] if w in keep] for v in keep}
        ecol = {e: c for e, c in self.ecol.items() if e[0] in keep and e[1] in keep}
        return PlaneTri(rot, ecol, root)

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(self.rot)
        g.add_edges_from(self.ecol)
        return g


def rotation_from_triangles(tris: list[tuple[int, int, int]]) -> dict[int, list[int]]:
    """Rebuild counterclockwise rotations from counterclockwise triangles."""
    succ: dict[int, dict[int, int]] = {}
    for a, b, c in tris:
        succ.setdefault(a, {})[b] = c
        succ.setdefault(b, {})[c] = a
        succ.setdefault(c, {})[a] = b
    rot: dict[int, list[int]] = {}
    for v, s in succ.items():
        start = min(s)
        order = [start]
        w = s[start]
        while w != start:
            order.append(w)
            w = s[w]
            if len(order) > len(s):
                raise NotPolyhedral(f"triangles around vertex {v} do not close up")
        if len(order) != len(s):
            raise NotPolyhedral(f"vertex {v} is pinched (triangles form several fans)")
        rot[v] = order
    return rot


# ---------------------------------------------------------------------------
# Duality
# ---------------------------------------------------------------------------


@dataclass
class EulerianTriangulation:
    """The dual of an embedded cubic bipartite polyhedral graph.

    Vertex ``F`` of the triangulation is primal face ``F``; triangle ``v`` is
    primal vertex ``v``; dual edges carry the primal edge colors.
    """

    tri: PlaneTri
    triangles: list[tuple[int, int, int]]
    tri_color: list[int]
    face_color: list[int]
    root_triangle: int
    tri_index: dict[tuple[int, int, int], int] = field(repr=False)
    primal_edge: dict[tuple[int, int], tuple[int, int]] = field(repr=False)

    @property
    def nv(self) -> int:
        return len(self.tri.rot)

    def with_root(self, root_vertex: int) -> EulerianTriangulation:
        """Same triangulation re-rooted at the triangle dual to ``root_vertex``."""
        t = self.tri.copy()
        t.root = self.triangles[root_vertex]
        white_sign = t.root_sign
        colors = [WHITE if t.sign(*tr) == white_sign else BLUE for tr in self.triangles]
        return EulerianTriangulation(
            t, self.triangles, colors, self.face_color, root_vertex,
            self.tri_index, self.primal_edge,
        )


def dualize(
    emb: PlanarEmbedding,
    bip: VertexBipartition,
    coloring: EdgeColoring3,
    root_vertex: int = 0,
) -> EulerianTriangulation:
    """Build the dual triangulation; triangles on the root's side are white."""
    g = emb.graph
    rot = emb.rotation
    triangles: list[tuple[int, int, int]] = []
    ecol: dict[tuple[int, int], int] = {}
    primal_edge: dict[tuple[int, int], tuple[int, int]] = {}
    for v in range(g.n):
        r = rot[v]
        if len(r) != 3:
            raise NotPolyhedral(f"vertex {v} is not of degree three")
        f = [emb.dart_face[(v, w)] for w in r]
        if len(set(f)) != 3:
            raise NotPolyhedral(f"a face touches vertex {v} more than once")
        triangles.append((f[0], f[1], f[2]))
        for i in range(3):
            key = edge_key(f[i], f[(i + 1) % 3])
            pe = edge_key(v, r[(i + 1) % 3])
            old = primal_edge.get(key)
            if old is not None and old != pe:
                raise NotPolyhedral(f"faces {key} share more than one edge")
            primal_edge[key] = pe
            ecol[key] = coloring.of(*pe)
    if len(ecol) != g.m:
        raise NotPolyhedral("dual graph has parallel edges")
    drot = rotation_from_triangles(triangles)
    for v, r in drot.items():
        if len(r) % 2:
            raise NotPolyhedral(f"dual vertex {v} has odd degree")
    root = triangles[root_vertex]
    tri = PlaneTri(drot, ecol, root)
    colors = [WHITE if bip.side[v] == bip.side[root_vertex] else BLUE for v in range(g.n)]
    tri_index = {canonical_face(*t): i for i, t in enumerate(triangles)}
    return EulerianTriangulation(
        tri, triangles, colors, list(coloring.face_color), root_vertex, tri_index, primal_edge
    )


def primal_from_triangles(
    tris: list[tuple[int, int, int]],
) -> tuple[UndirectedGraph, list[list[int]]]:
    """The cubic dual graph of a triangulation plus its rotation system."""
    owner: dict[tuple[int, int], int] = {}
    for i, (a, b, c) in enumerate(tris):
        owner[(a, b)] = i
        owner[(b, c)] = i
        owner[(c, a)] = i
    rotations = []
    edges = set()
    for i, (a, b, c) in enumerate(tris):
        nbrs = [owner[(b, a)], owner[(c, b)], owner[(a, c)]]
        rotations.append(nbrs)
        for j in nbrs:
            edges.add(edge_key(i, j))
    return UndirectedGraph(len(tris), sorted(edges)), rotations


# ---------------------------------------------------------------------------
# Triangles
# ---------------------------------------------------------------------------


def enumerate_triangles(t: PlaneTri) -> list[tuple[int, int, int]]:
    """All 3-cycles as sorted triples, by degree-ordered neighbour intersection."""
    order = {v: (len(r), v) for v, r in t.rot.items()}
    higher: dict[int, set[int]] = {
        v: {w for w in r if order[w] > order[v]} for v, r in t.rot.items()
    }
    out = []
    for u, hu in higher.items():
        for v in hu:
            for w in hu & higher[v]:
                out.append(tuple(sorted((u, v, w))))
    return sorted(out)


def separating_triangles(t: PlaneTri) -> list[tuple[int, int, int]]:
    return [tr for tr in enumerate_triangles(t) if not t.is_face(*tr)]


def face_distances(t: PlaneTri) -> dict[tuple[int, int, int], int]:
    """Breadth-first distance of every face from the root face (edge adjacency)."""
    start = canonical_face(*t.root)
    dist = {start: 0}
    queue = deque([start])
    while queue:
        f = queue.popleft()
        d = dist[f] + 1
        a, b, c = f
        for x, y in ((a, b), (b, c), (c, a)):
            g = canonical_face(y, x, t.third(y, x))
            if g not in dist:
                dist[g] = d
                queue.append(g)
    return dist


def inside_orientation(
    t: PlaneTri, tri: tuple[int, int, int], dist: dict[tuple[int, int, int], int] | None = None
) -> tuple[int, int, int]:
    """Order a separating triangle so that its inside lies on the left."""
    a, b, c = tri
    if dist is None:
        dist = face_distances(t)
    left = min(dist[canonical_face(x, y, t.third(x, y))] for x, y in ((a, b), (b, c), (c, a)))
    right = min(dist[canonical_face(y, x, t.third(y, x))] for x, y in ((a, b), (b, c), (c, a)))
    return (a, c, b) if left < right else (a, b, c)


def triangle_parity(
    t: PlaneTri,
    sep: tuple[int, int, int],
    dist: dict[tuple[int, int, int], int] | None = None,
) -> str:
    """``even`` if the faces just inside ``sep`` share the root's color, else ``odd``."""
    a, b, c = sep
    if not (t.adjacent(a, b) and t.adjacent(b, c) and t.adjacent(a, c)):
        raise NotSeparating(f"{sep} is not a triangle")
    if t.is_face(a, b, c):
        raise NotSeparating(f"{sep} is a face")
    a, b, c = inside_orientation(t, sep, dist)
    return "even" if t.is_white(a, b, t.third(a, b)) else "odd"


# ---------------------------------------------------------------------------
# Inclusion tree
# ---------------------------------------------------------------------------


@dataclass
class Component:
    """A 4-connected piece: the vertices strictly inside its bounding triangle
    (and outside every nested separating triangle) plus the triangle's corners."""

    cid: int
    tri: PlaneTri
    boundary: tuple[int, int, int]
    parent: int | None
    parity: str | None
    children: list[int] = field(default_factory=list)
    depth: int = 0


@dataclass
class SeparatingTriangleTree:
    components: list[Component]

    @property
    def edges(self) -> list[tuple[int, int, str]]:
        return [(c.parent, c.cid, c.parity) for c in self.components if c.parent is not None]

    def even_triangles(self) -> list[tuple[int, int, int]]:
        return [c.boundary for c in self.components if c.parity == "even"]


def _inside_arcs(t: PlaneTri, tri: tuple[int, int, int]) -> dict[int, list[int]]:
    a, b, c = tri
    return {a: t.arc(a, b, c), b: t.arc(b, c, a), c: t.arc(c, a, b)}


def separating_tree(t: PlaneTri) -> SeparatingTriangleTree:
    """Split ``t`` on its separating triangles.

    Each edge is oriented from ``u`` to ``v`` when ``u`` lies strictly inside
    a separating triangle (or the outer triangle) with corner ``v`` and is
    bidirected otherwise; the strongly connected components of that digraph
    are the interiors of the 4-connected pieces.
    """
    root = t.root
    seps = separating_triangles(t)
    if not seps:
        comp = Component(0, t.copy(), root, None, None, depth=1)
        return SeparatingTriangleTree([comp])
    dist = face_distances(t)
    outer = (root[0], root[2], root[1])
    oriented = [outer] + [inside_orientation(t, s, dist) for s in seps]
    arcs_of: dict[tuple[int, int, int], dict[int, list[int]]] = {}
    directed: set[tuple[int, int]] = set()
    for tri in oriented:
        arcs = _inside_arcs(t, tri)
        arcs_of[canonical_face(*sorted(tri))] = arcs
        for v, arc in arcs.items():
            for u in arc:
                directed.add((u, v))
    dg = nx.DiGraph()
    dg.add_nodes_from(t.rot)
    for u, v in t.ecol:
        fwd = (u, v) in directed
        bwd = (v, u) in directed
        if fwd or not bwd:
            dg.add_edge(u, v)
        if bwd or not fwd:
            dg.add_edge(v, u)
    scc_of: dict[int, int] = {}
    sccs = list(nx.strongly_connected_components(dg))
    for i, s in enumerate(sccs):
        for v in s:
            scc_of[v] = i
    root_scc = scc_of[root[0]]
    # Each non-root SCC is bounded by exactly three outside neighbours.
    bounding: dict[int, tuple[int, int, int]] = {}
    for i, s in enumerate(sccs):
        if i == root_scc:
            continue
        border = set()
        for v in s:
            for w in t.rot[v]:
                if w not in s and (v, w) in directed:
                    border.add(w)
        if len(border) != 3:
            raise NotPolyhedral("strong component is not bounded by a triangle")
        bounding[i] = tuple(sorted(border))
    # Process components outward-in: depth = 1 + depth of the deepest corner SCC.
    depth = {root_scc: 0}
    order = list(nx.topological_sort(nx.condensation(dg, sccs)))
    order.reverse()
    comp_of_scc: dict[int, int] = {}
    components: list[Component] = []
    for i in order:
        if i == root_scc:
            continue
        corners = bounding[i]
        parent_scc = max((scc_of[v] for v in corners), key=lambda j: depth[j])
        depth[i] = depth[parent_scc] + 1
        keep = set(sccs[i]) | set(corners)
        key = canonical_face(*corners)
        if set(corners) == set(root):
            boundary = root
            parity = None
            parent = None
        else:
            inside = inside_orientation(t, corners, dist)
            boundary = (inside[0], inside[2], inside[1])
            parity = "even" if t.is_white(inside[0], inside[1], t.third(inside[0], inside[1])) else "odd"
            parent = comp_of_scc[parent_scc]
        arcs = arcs_of[key]
        rot: dict[int, list[int]] = {}
        for v in sccs[i]:
            rot[v] = [w for w in t.rot[v] if w in keep]
        a, b, c = boundary[0], boundary[2], boundary[1]
        # corners: inside arc (filtered) framed by the two other corners
        for v, nxt, prv in ((a, b, c), (b, c, a), (c, a, b)):
            rot[v] = [nxt] + [w for w in arcs[v] if w in keep] + [prv]
        ecol = {}
        for v, r in rot.items():
            for w in r:
                if v < w:
                    key2 = (v, w)
                    ecol[key2] = t.ecol[key2]
        sub = PlaneTri(rot, ecol, boundary)
        cid = len(components)
        comp_of_scc[i] = cid
        components.append(Component(cid, sub, boundary, parent, parity, depth=depth[i]))
        if parent is not None:
            components[parent].children.append(cid)
    return SeparatingTriangleTree(components)


# ---------------------------------------------------------------------------
# Rainbow validation
# ---------------------------------------------------------------------------


@dataclass
class RainbowReport:
    violations: list[str] = field(default_factory=list)
    skipped: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def four_cycles(t: PlaneTri) -> list[tuple[int, int, int, int]]:
    """All 4-cycles ``(a, b, c, d)`` with ``a`` the smallest vertex, each once."""
    out = []
    verts = sorted(t.rot)
    for a in verts:
        na = [w for w in t.rot[a] if w > a]
        # opposite vertex c with two distinct common neighbours b, d
        mids: dict[int, list[int]] = {}
        for b in na:
            for c in t.rot[b]:
                if c > a and c != b:
                    mids.setdefault(c, []).append(b)
        for c, bs in mids.items():
            bs = sorted(set(bs))
            for i in range(len(bs)):
                for j in range(i + 1, len(bs)):
                    if c != bs[i] and c != bs[j]:
                        out.append((a, bs[i], c, bs[j]))
    return out


def check_rainbow(t: PlaneTri, max_four_cycle_vertices: int = 400) -> RainbowReport:
    rep = RainbowReport()
    for a, b, c in t.faces():
        cols = {t.color(a, b), t.color(b, c), t.color(c, a)}
        if cols != {0, 1, 2}:
            rep.violations.append(f"face {(a, b, c)} is not rainbow")
    for v, r in t.rot.items():
        k = len(r)
        if k % 2:
            rep.violations.append(f"vertex {v} has odd degree {k}")
            continue
        cols = [t.color(v, w) for w in r]
        if len(set(cols[0::2])) != 1 or len(set(cols[1::2])) != 1 or cols[0] == cols[1]:
            rep.violations.append(f"colors do not alternate in pairs around vertex {v}")
    for x in range(3):
        gx = nx.Graph()
        gx.add_edges_from(e for e, c in t.ecol.items() if c == x)
        if gx.number_of_nodes() < 3 or not nx.is_biconnected(gx):
            rep.violations.append(f"monochromatic subgraph of color {x} is not biconnected")
    seps = separating_triangles(t)
    for a, b, c in seps:
        if {t.color(a, b), t.color(b, c), t.color(a, c)} != {0, 1, 2}:
            rep.violations.append(f"separating triangle {(a, b, c)} is not rainbow")
    if len(t.rot) <= max_four_cycle_vertices:
        for a, b, c, d in four_cycles(t):
            cols = [t.color(a, b), t.color(b, c), t.color(c, d), t.color(d, a)]
            mono = len(set(cols)) == 1
            pairs = (cols[0] == cols[1] and cols[2] == cols[3] and cols[0] != cols[2]) or (
                cols[1] == cols[2] and cols[3] == cols[0] and cols[1] != cols[3]
            )
            if not (mono or pairs):
                rep.violations.append(f"4-cycle {(a, b, c, d)} has color pattern {cols}")
    else:
        rep.skipped.append("4-cycle patterns (triangulation too large)")
    if seps:
        for comp in separating_tree(t).components:
            for v, r in comp.tri.rot.items():
                if len(r) % 2:
                    rep.violations.append(f"component {comp.cid} has odd-degree vertex {v}")
                    break
    return rep


# ---------------------------------------------------------------------------
# Diagnostic dump
# ---------------------------------------------------------------------------


def dump_triangulation(t: PlaneTri) -> dict:
    """JSON-ready vertex/edge/triangle tables."""
    return {
        "vertices": sorted(t.rot),
        "rotations": {str(v): r for v, r in sorted(t.rot.items())},
        "edges": [[u, v, c] for (u, v), c in sorted(t.ecol.items())],
        "triangles": [
            [a, b, c, "white" if t.is_white(a, b, c) else "blue"] for a, b, c in sorted(t.faces())
        ],
        "root": list(t.root),
    }


def load_triangulation(doc: dict) -> PlaneTri:
    rot = {int(v): [int(w) for w in r] for v, r in doc["rotations"].items()}
    ecol = {edge_key(int(u), int(v)): int(c) for u, v, c in doc["edges"]}
    root = tuple(int(x) for x in doc["root"])
    if len(root) != 3:
        raise ValueError("root must be a triangle")
    return PlaneTri(rot, ecol, root)  # type: ignore[arg-type]
