"""Input graphs, structural checks, planar embeddings and the canonical 3-edge-coloring.

Conventions used throughout the package:

* vertices are ``0..n-1``; an undirected edge is stored as ``(min, max)``;
* ``rotation[v]`` lists the neighbours of ``v`` in counterclockwise order as
  seen from outside the polyhedron;
* a face is a vertex cycle ``[v0, v1, ...]`` whose darts ``v_i -> v_{i+1}``
  all have the face on their left.  Walking a face, the dart after
  ``u -> v`` is ``v -> w`` where ``w`` precedes ``u`` in ``rotation[v]``;
* colors/axes are the integers 0, 1, 2 printed as ``x``, ``y``, ``z``.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import (
    DuplicateEdge,
    FaceColoringFailed,
    MalformedInput,
    NonPlanar,
    NotBipartite,
    NotConnected,
    NotCubic,
    SelfLoop,
)

AXES = ("x", "y", "z")
SIDE_A, SIDE_B = 0, 1


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass
class UndirectedGraph:
    n: int
    edges: list[tuple[int, int]]
    adj: list[list[int]] = field(default_factory=list, repr=False)

    def __post_init__(self) -> None:
        if not self.adj:
            self.adj = [[] for _ in range(self.n)]
            for u, v in self.edges:
                self.adj[u].append(v)
                self.adj[v].append(u)

    @property
    def m(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        a = self.adj[u]
        b = self.adj[v]
        return v in a if len(a) <= len(b) else u in b

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        g.add_edges_from(self.edges)
        return g


@dataclass
class GraphDocument:
    """A parsed input: the graph plus an optional embedding hint."""

    graph: UndirectedGraph
    rotations: list[list[int]] | None = None
    outer_face: tuple[int, int] | None = None


@dataclass
class PlanarEmbedding:
    graph: UndirectedGraph
    rotation: list[list[int]]
    faces: list[list[int]]
    outer_face: int
    dart_face: dict[tuple[int, int], int] = field(repr=False)

    def face_left(self, u: int, v: int) -> int:
        return self.dart_face[(u, v)]


@dataclass
class VertexBipartition:
    side: list[int]


@dataclass
class EdgeColoring3:
    color: dict[tuple[int, int], int]
    face_color: list[int] = field(default_factory=list)

    def of(self, u: int, v: int) -> int:
        return self.color[edge_key(u, v)]


# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def _build_graph(n: int, pairs: list[tuple[int, int]]) -> UndirectedGraph:
    if n < 0:
        raise MalformedInput("negative vertex count")
    seen: set[tuple[int, int]] = set()
    edges: list[tuple[int, int]] = []
    for u, v in pairs:
        if not (0 <= u < n and 0 <= v < n):
            raise MalformedInput(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at vertex {u}")
        key = edge_key(u, v)
        if key in seen:
            raise DuplicateEdge(f"edge ({u}, {v}) listed twice")
        seen.add(key)
        edges.append(key)
    return UndirectedGraph(n, edges)


def _as_int(value: object, what: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise MalformedInput(f"{what} must be an integer, got {value!r}")
    return value


def parse_document(text: str) -> GraphDocument:
    """Parse either the edge-list text format or the JSON document format."""
    stripped = text.strip()
    if not stripped:
        raise MalformedInput("empty document")
    if stripped.startswith("{"):
        return _parse_json(stripped)
    return GraphDocument(_parse_edge_list(stripped))


def parse_graph(text: str) -> UndirectedGraph:
    return parse_document(text).graph


def _parse_edge_list(text: str) -> UndirectedGraph:
    lines = [ln.split() for ln in text.splitlines() if ln.strip()]
    try:
        header = [int(tok) for tok in lines[0]]
    except ValueError as exc:
        raise MalformedInput(f"bad header line: {lines[0]!r}") from exc
    if len(header) != 2:
        raise MalformedInput("header must be 'n m'")
    n, m = header
    body = lines[1:]
    if len(body) != m:
        raise MalformedInput(f"header announces {m} edges, found {len(body)}")
    pairs = []
    for row in body:
        if len(row) != 2:
            raise MalformedInput(f"bad edge line: {' '.join(row)!r}")
        try:
            pairs.append((int(row[0]), int(row[1])))
        except ValueError as exc:
            raise MalformedInput(f"bad edge line: {' '.join(row)!r}") from exc
    return _build_graph(n, pairs)


def _parse_json(text: str) -> GraphDocument:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"invalid JSON: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise MalformedInput("JSON graph needs keys 'n' and 'edges'")
    n = _as_int(doc["n"], "n")
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list):
        raise MalformedInput("'edges' must be a list")
    pairs = []
    for e in raw_edges:
        if not isinstance(e, list) or len(e) != 2:
            raise MalformedInput(f"bad edge {e!r}")
        pairs.append((_as_int(e[0], "vertex"), _as_int(e[1], "vertex")))
    g = _build_graph(n, pairs)
    rotations = doc.get("rotations")
    if rotations is not None:
        if not isinstance(rotations, list) or len(rotations) != n:
            raise MalformedInput("'rotations' must list one neighbour order per vertex")
        rotations = [[_as_int(x, "vertex") for x in r] for r in rotations]
    outer = doc.get("outer_face")
    if outer is not None:
        if not isinstance(outer, list) or len(outer) != 2:
            raise MalformedInput("'outer_face' must be a dart [u, v]")
        outer = (_as_int(outer[0], "vertex"), _as_int(outer[1], "vertex"))
    return GraphDocument(g, rotations, outer)


def format_edge_list(g: UndirectedGraph) -> str:
    lines = [f"{g.n} {g.m}"] + [f"{u} {v}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def format_document(g: UndirectedGraph, rotations: list[list[int]] | None = None) -> str:
    doc: dict[str, object] = {"n": g.n, "edges": [list(e) for e in g.edges]}
    if rotations is not None:
        doc["rotations"] = rotations
    return json.dumps(doc, separators=(",", ":")) + "\n"


# ---------------------------------------------------------------------------
# Structural checks
# ---------------------------------------------------------------------------


def check_cubic(g: UndirectedGraph) -> bool:
    return all(len(a) == 3 for a in g.adj)


def require_cubic(g: UndirectedGraph) -> None:
    for v, a in enumerate(g.adj):
        if len(a) != 3:
            raise NotCubic(f"vertex {v} has degree {len(a)}")


def is_connected(g: UndirectedGraph) -> bool:
    if g.n == 0:
        return True
    seen = [False] * g.n
    seen[0] = True
    stack = [0]
    count = 1
    while stack:
        v = stack.pop()
        for w in g.adj[v]:
            if not seen[w]:
                seen[w] = True
                count += 1
                stack.append(w)
    return count == g.n


def require_connected(g: UndirectedGraph) -> None:
    if not is_connected(g):
        raise NotConnected("graph is not connected")


def bipartition(g: UndirectedGraph) -> VertexBipartition:
    """Two-color a connected graph; vertex 0 is always on side A."""
    side = [-1] * g.n
    parent = [-1] * g.n
    for start in range(g.n):
        if side[start] != -1:
            continue
        side[start] = SIDE_A
        queue = deque([start])
        while queue:
            v = queue.popleft()
            for w in g.adj[v]:
                if side[w] == -1:
                    side[w] = 1 - side[v]
                    parent[w] = v
                    queue.append(w)
                elif side[w] == side[v]:
                    raise NotBipartite(
                        f"odd cycle through edge ({v}, {w})", _odd_cycle(parent, v, w)
                    )
    return VertexBipartition(side)


def _odd_cycle(parent: list[int], v: int, w: int) -> list[int]:
    """Close the two BFS tree paths from ``v`` and ``w`` into a cycle."""
    path_v = [v]
    while parent[path_v[-1]] != -1:
        path_v.append(parent[path_v[-1]])
    path_w = [w]
    while parent[path_w[-1]] != -1:
        path_w.append(parent[path_w[-1]])
    on_v = {x: i for i, x in enumerate(path_v)}
    for j, x in enumerate(path_w):
        if x in on_v:
            return path_v[: on_v[x] + 1] + path_w[:j][::-1]
    return path_v + path_w[::-1]


# ---------------------------------------------------------------------------
# Embedding
# ---------------------------------------------------------------------------


def trace_faces(
    rotation: list[list[int]],
) -> tuple[list[list[int]], dict[tuple[int, int], int]]:
    """Trace all faces of a rotation system (face on the left of each dart)."""
    pos: dict[tuple[int, int], int] = {}
    for v, r in enumerate(rotation):
        for i, w in enumerate(r):
            pos[(v, w)] = i
    dart_face: dict[tuple[int, int], int] = {}
    faces: list[list[int]] = []
    for v, r in enumerate(rotation):
        for w in r:
            if (v, w) in dart_face:
                continue
            fid = len(faces)
            cycle = []
            a, b = v, w
            while (a, b) not in dart_face:
                dart_face[(a, b)] = fid
                cycle.append(a)
                rb = rotation[b]
                c = rb[pos[(b, a)] - 1]
                a, b = b, c
            faces.append(cycle)
    return faces, dart_face


def embed_planar(
    g: UndirectedGraph,
    rotations: list[list[int]] | None = None,
    outer_dart: tuple[int, int] | None = None,
) -> PlanarEmbedding:
    """Return a planar embedding of a connected graph.

    Supplied rotations are checked in linear time (every neighbour listed
    once, Euler's formula on the traced faces); otherwise networkx's
    planarity test produces the embedding.
    """
    require_connected(g)
    if rotations is not None:
        for v in range(g.n):
            if sorted(rotations[v]) != sorted(g.adj[v]):
                raise NonPlanar(f"rotation at vertex {v} does not list its neighbours")
        rotation = [list(r) for r in rotations]
    else:
        ok, emb = nx.check_planarity(g.to_networkx())
        if not ok:
            raise NonPlanar("graph is not planar")
        rotation = [list(reversed(list(emb.neighbors_cw_order(v)))) for v in range(g.n)]
    faces, dart_face = trace_faces(rotation)
    if g.n - g.m + len(faces) != 2:
        raise NonPlanar("rotation system does not describe a plane embedding")
    if outer_dart is None:
        outer_dart = (0, min(rotation[0])) if g.n and rotation[0] else None
    if outer_dart is None:
        outer = 0
    else:
        if outer_dart not in dart_face:
            raise MalformedInput(f"outer face dart {outer_dart} is not a dart of the graph")
        outer = dart_face[outer_dart]
    return PlanarEmbedding(g, rotation, faces, outer, dart_face)


# ---------------------------------------------------------------------------
# Connectivity diagnostics
# ---------------------------------------------------------------------------


@dataclass
class TwoCutReport:
    max_components: int
    witness: tuple[int, int] | None


def two_cut_components(g: UndirectedGraph) -> TwoCutReport:
    """Worst vertex pair: components of ``g - {u, v}`` plus one if ``uv`` is an edge.

    For each ``u`` the block structure of ``g - u`` gives the count for every
    ``v`` at once: deleting ``v`` turns its component into one piece per block
    containing ``v``.
    """
    best = -1
    witness: tuple[int, int] | None = None
    base = g.to_networkx()
    for u in range(g.n):
        h = base.copy()
        h.remove_node(u)
        comp_count = nx.number_connected_components(h)
        blocks_at = dict.fromkeys(h.nodes, 0)
        for block in nx.biconnected_components(h):
            for x in block:
                blocks_at[x] += 1
        for v in range(u + 1, g.n):
            count = comp_count - 1 + blocks_at[v]
            if g.has_edge(u, v):
                count += 1
            if count > best:
                best, witness = count, (u, v)
    return TwoCutReport(max(best, 0), witness)


def vertex_connectivity_class(g: UndirectedGraph) -> int:
    """Vertex connectivity capped at 3 (0 = disconnected)."""
    if not is_connected(g):
        return 0
    h = g.to_networkx()
    if g.n <= 2:
        return 1
    if not nx.is_biconnected(h):
        return 1
    if g.n <= 3:
        return 2
    for u in range(g.n):
        hu = h.copy()
        hu.remove_node(u)
        if next(nx.articulation_points(hu), None) is not None:
            return 2
    return 3


# ---------------------------------------------------------------------------
# Face and edge coloring
# ---------------------------------------------------------------------------


def face_three_coloring(emb: PlanarEmbedding) -> list[int]:
    """Color the faces so the three faces at each vertex get distinct colors.

    The faces at vertex 0 receive 0, 1, 2 in rotation order; every other
    face color is then forced vertex by vertex.
    """
    g = emb.graph
    rot = emb.rotation
    color = [-1] * len(emb.faces)

    def faces_at(v: int) -> list[int]:
        return [emb.dart_face[(v, w)] for w in rot[v]]

    if len(rot[0]) != 3:
        raise FaceColoringFailed("vertex 0 is not of degree three")
    for c, f in enumerate(faces_at(0)):
        if color[f] != -1 and color[f] != c:
            raise FaceColoringFailed("a face meets vertex 0 twice")
        color[f] = c
    seen = [False] * g.n
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in rot[v]:
            if seen[w]:
                continue
            seen[w] = True
            fs = faces_at(w)
            known = {color[f] for f in fs if color[f] != -1}
            if len(known) < 2:
                raise FaceColoringFailed(f"faces at vertex {w} are not determined")
            missing = {0, 1, 2} - known
            for f in fs:
                if color[f] == -1:
                    if len(missing) != 1:
                        raise FaceColoringFailed(f"face colors clash at vertex {w}")
                    color[f] = missing.pop()
            queue.append(w)
    for v in range(g.n):
        if sorted(color[f] for f in faces_at(v)) != [0, 1, 2]:
            raise FaceColoringFailed(f"faces at vertex {v} do not carry three colors")
    return color


def three_edge_coloring(
    emb: PlanarEmbedding, bip: VertexBipartition | None = None
) -> EdgeColoring3:
    """Color each edge by the one color missing from its two faces."""
    if bip is not None:
        for u, v in emb.graph.edges:
            if bip.side[u] == bip.side[v]:
                raise FaceColoringFailed("bipartition is not proper")
    if not check_cubic(emb.graph):
        raise FaceColoringFailed("graph is not cubic")
    fcolor = face_three_coloring(emb)
    color: dict[tuple[int, int], int] = {}
    for u, v in emb.graph.edges:
        a = fcolor[emb.dart_face[(u, v)]]
        b = fcolor[emb.dart_face[(v, u)]]
        if a == b:
            raise FaceColoringFailed(f"both faces of edge ({u}, {v}) share a color")
        color[(u, v)] = 3 - a - b
    return EdgeColoring3(color, fcolor)
