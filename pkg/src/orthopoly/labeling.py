"""Regular edge labelings, the bichromatic st-graphs and their numberings.

A labeling keeps the rainbow colors of the triangulation and adds a
direction to every edge, stored as ``head[edge_key(u, v)]``.  Orientation
words follow the package convention: a face ``(a, b, c)`` with the face on
the left of ``a -> b`` is traversed counterclockwise.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import networkx as nx

from .errors import CycleDetected
from .euler_tri import PlaneTri
from .graph_core import edge_key

Edge = tuple[int, int]
SINK = -1

# The outer triangle carries no cover edge; its three edges follow the root
# triple in its face-on-the-left order.  The other choice breaks the
# alternation at the exterior vertices.
_OUTER_ALONG = True


@dataclass
class RegularEdgeLabeling:
    tri: PlaneTri
    head: dict[Edge, int]

    def tail(self, u: int, v: int) -> int:
        e = edge_key(u, v)
        h = self.head[e]
        return e[0] if h == e[1] else e[1]

    def is_out(self, v: int, w: int) -> bool:
        """True if the edge ``vw`` leaves ``v``."""
        return self.head[edge_key(v, w)] == w

    def arcs(self) -> list[tuple[int, int, int]]:
        """``(tail, head, color)`` for every edge, sorted."""
        out = []
        for e, h in self.head.items():
            t = e[0] if h == e[1] else e[1]
            out.append((t, h, self.tri.ecol[e]))
        return sorted(out)


def _succ_map(tri: PlaneTri) -> dict[Edge, int]:
    """``succ[(v, u)]`` is the neighbour after ``u`` around ``v``."""
    succ: dict[Edge, int] = {}
    for v, r in tri.rot.items():
        k = len(r)
        for i, u in enumerate(r):
            succ[(v, u)] = r[i + 1] if i + 1 < k else r[0]
    return succ


def face_parities(tri: PlaneTri, cover: set[Edge], succ: dict[Edge, int] | None = None) -> dict[Edge, int]:
    """Number of cover cycles (mod 2) around the face left of each dart.

    A breadth-first search over faces starting at the root face toggles
    the parity whenever it crosses a cover edge.
    """
    if succ is None:
        succ = _succ_map(tri)
    a, b, _ = tri.root
    par: dict[Edge, int] = {}

    def mark(x: int, y: int, p: int) -> None:
        z = succ[(x, y)]
        par[(x, y)] = p
        par[(y, z)] = p
        par[(z, x)] = p

    mark(a, b, 0)
    queue = deque([(a, b)])
    while queue:
        x, y = queue.popleft()
        z = succ[(x, y)]
        p = par[(x, y)]
        for s, t in ((x, y), (y, z), (z, x)):
            if (t, s) not in par:
                mark(t, s, p ^ (edge_key(s, t) in cover))
                queue.append((t, s))
    return par


def orient_from_cover(tri: PlaneTri, cover: set[Edge]) -> RegularEdgeLabeling:
    """Direct the edges of ``tri`` from a rooted cycle cover.

    In every inner white triangle the cover edge runs clockwise and the
    other two counterclockwise; triangles enclosed by an odd number of
    cover cycles are then reversed.  Each edge lies in exactly one white
    triangle, so this fixes every direction.
    """
    succ = _succ_map(tri)
    par = face_parities(tri, cover, succ)
    root_sign = tri.root_sign
    ecol = tri.ecol
    outer = set(tri.root)
    head: dict[Edge, int] = {}
    for (x, y), z in succ.items():
        # visit each face once, from its smallest vertex
        if not (x < y and x < z):
            continue
        if (ecol[edge_key(y, z)] - ecol[edge_key(x, y)]) % 3 != root_sign:
            continue
        if {x, y, z} == outer:
            for s, t in ((x, y), (y, z), (z, x)):
                head[edge_key(s, t)] = t if _OUTER_ALONG else s
            continue
        flip = par[(x, y)]
        for s, t in ((x, y), (y, z), (z, x)):
            along = (edge_key(s, t) not in cover) ^ flip
            head[edge_key(s, t)] = t if along else s
    return RegularEdgeLabeling(tri, head)


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class RelReport:
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def validate_rel(tri: PlaneTri, rel: RegularEdgeLabeling) -> RelReport:
    """Check the local alternation rules of a regular edge labeling."""
    rep = RelReport()
    bad = rep.violations
    for e in tri.ecol:
        h = rel.head.get(e)
        if h is None or h not in e:
            bad.append(f"edge {e} has no direction")
    if bad:
        return rep
    outer = set(tri.root)
    for v, r in tri.rot.items():
        k = len(r)
        exc = []
        for i in range(k):
            u, w = r[i], r[(i + 1) % k]
            ou, ow = rel.is_out(v, u), rel.is_out(v, w)
            if ou == ow:
                exc.append((u, w, "out" if ou else "in"))
        if v in outer:
            if exc:
                bad.append(f"exterior vertex {v}: directions do not alternate at {exc[0][:2]}")
            continue
        if len(exc) != 2:
            bad.append(f"vertex {v}: {len(exc)} non-alternating triangles (expected 2)")
            continue
        for u, w, _ in exc:
            if not tri.is_white(v, u, w):
                bad.append(f"vertex {v}: exceptional triangle {(v, u, w)} is blue")
        if {exc[0][2], exc[1][2]} != {"in", "out"}:
            bad.append(f"vertex {v}: exceptional triangles are both {exc[0][2]}going")
    for v, r in tri.rot.items():
        k = len(r)
        for i in range(k):
            u, w = r[i], r[(i + 1) % k]
            if v < u and v < w and not tri.is_white(v, u, w):
                cyc = rel.is_out(v, u) == rel.is_out(u, w) == rel.is_out(w, v)
                if not cyc:
                    bad.append(f"blue triangle {(v, u, w)} is not a directed cycle")
    return rep


def monochromatic_digraph(tri: PlaneTri, rel: RegularEdgeLabeling, color: int) -> nx.DiGraph:
    g = nx.DiGraph()
    for e, c in tri.ecol.items():
        if c == color:
            h = rel.head[e]
            g.add_edge(e[0] if h == e[1] else e[1], h)
    return g


def check_monochromatic(tri: PlaneTri, rel: RegularEdgeLabeling) -> list[str]:
    """Each color class must be biconnected and st-planar with terminals on the root.

    Every root vertex must be the source of exactly one class and the sink
    of exactly one other.
    """
    bad: list[str] = []
    outer = set(tri.root)
    source_count = dict.fromkeys(outer, 0)
    sink_count = dict.fromkeys(outer, 0)
    for c in range(3):
        g = monochromatic_digraph(tri, rel, c)
        if not nx.is_biconnected(g.to_undirected()):
            bad.append(f"color {c}: subgraph is not biconnected")
        if not nx.is_directed_acyclic_graph(g):
            bad.append(f"color {c}: subgraph has a directed cycle")
            continue
        sources = [v for v in g if g.in_degree(v) == 0]
        sinks = [v for v in g if g.out_degree(v) == 0]
        if len(sources) != 1 or len(sinks) != 1:
            bad.append(f"color {c}: {len(sources)} sources and {len(sinks)} sinks")
            continue
        s, t = sources[0], sinks[0]
        if s not in outer or t not in outer:
            bad.append(f"color {c}: terminals {s}, {t} not on the root triangle")
            continue
        source_count[s] += 1
        sink_count[t] += 1
    if not bad:
        for v in outer:
            if source_count[v] != 1 or sink_count[v] != 1:
                bad.append(f"root vertex {v} is source {source_count[v]} and sink {sink_count[v]} times")
    return bad


# ---------------------------------------------------------------------------
# Bichromatic st-graphs
# ---------------------------------------------------------------------------


@dataclass
class DeltaXY:
    """``x``-arcs as labeled, ``y``-arcs reversed, plus a sink hanging off the root."""

    x: int
    y: int
    source: int
    out: dict[int, list[int]]
    nverts: int

    @property
    def axis(self) -> int:
        """The coordinate axis numbered by this graph (the third color)."""
        return 3 - self.x - self.y

    def arc_list(self) -> list[Edge]:
        return [(u, w) for u, ws in self.out.items() for w in ws]


def build_delta_xy(tri: PlaneTri, rel: RegularEdgeLabeling, pair: tuple[int, int]) -> DeltaXY:
    """Build the st-graph for the color pair ``pair``.

    The roles of the two colors are fixed at the root vertex carrying both:
    its edges of color ``x`` leave it.
    """
    i, j = pair
    ecol = tri.ecol
    a, b, c = tri.root
    corners = {a: (b, c), b: (c, a), c: (a, b)}
    v = next(r for r, (p, q) in corners.items()
             if {ecol[edge_key(r, p)], ecol[edge_key(r, q)]} == {i, j})
    p, q = corners[v]
    xi = next(w for w in (p, q) if ecol[edge_key(v, w)] == i)
    x, y = (i, j) if rel.is_out(v, xi) else (j, i)
    out: dict[int, list[int]] = {u: [] for u in tri.rot}
    out[SINK] = []
    head = rel.head
    for e, col in ecol.items():
        h = head[e]
        t = e[0] if h == e[1] else e[1]
        if col == x:
            out[t].append(h)
        elif col == y:
            out[h].append(t)
    out[p].append(SINK)
    out[q].append(SINK)
    return DeltaXY(x, y, v, out, len(out))


def check_delta_xy(tri: PlaneTri, gr: DeltaXY) -> list[str]:
    """Acyclicity, unique terminals and the quadrilateral face shape."""
    bad: list[str] = []
    indeg = dict.fromkeys(gr.out, 0)
    for u, ws in gr.out.items():
        for w in ws:
            indeg[w] += 1
    sources = [u for u, d in indeg.items() if d == 0]
    sinks = [u for u, ws in gr.out.items() if not ws]
    if sources != [gr.source]:
        bad.append(f"pair {(gr.x, gr.y)}: sources {sources}")
    if sinks != [SINK]:
        bad.append(f"pair {(gr.x, gr.y)}: sinks {sinks}")
    try:
        st_number(gr, "distinct")
    except CycleDetected:
        bad.append(f"pair {(gr.x, gr.y)}: directed cycle")
        return bad
    arcs = set(gr.arc_list())
    z = gr.axis
    outer = set(tri.root)
    for (u, w), col in tri.ecol.items():
        if col != z:
            continue
        quad = [u, tri.third(w, u), w, tri.third(u, w)]
        if {u, w} <= outer:
            # the outer triangle is replaced by the sink
            quad = [u, tri.third(w, u), w, SINK] if tri.third(u, w) in outer else [u, SINK, w, tri.third(u, w)]
        ups = 0
        for s in range(4):
            a, b = quad[s], quad[(s + 1) % 4]
            if (a, b) in arcs:
                ups += 1
            elif (b, a) not in arcs:
                bad.append(f"pair {(gr.x, gr.y)}: face {quad} is missing side {(a, b)}")
                break
        else:
            if ups in (0, 4):
                bad.append(f"pair {(gr.x, gr.y)}: face {quad} is a directed cycle")
            else:
                turns = sum(
                    ((quad[s - 1], quad[s]) in arcs) != ((quad[s], quad[(s + 1) % 4]) in arcs)
                    for s in range(4)
                )
                if turns != 2:
                    bad.append(f"pair {(gr.x, gr.y)}: face {quad} has {turns // 2} sources")
    return bad


def st_number(gr: DeltaXY, mode: str = "distinct") -> dict[int, int]:
    """Number the vertices of an acyclic st-graph increasingly along every arc.

    ``distinct`` gives each vertex its position in a first-in first-out
    topological traversal (ties between vertices released together broken
    by id); ``compact`` gives each vertex the length of the longest path
    from the source, so vertices share values whenever possible.
    """
    if mode not in ("distinct", "compact"):
        raise ValueError(f"unknown numbering mode {mode!r}")
    out = gr.out
    indeg = dict.fromkeys(out, 0)
    for ws in out.values():
        for w in ws:
            indeg[w] += 1
    order: list[int] = []
    level = dict.fromkeys(out, 0)
    queue = deque(sorted(u for u, d in indeg.items() if d == 0))
    while queue:
        u = queue.popleft()
        order.append(u)
        lu = level[u] + 1
        released = []
        for w in out[u]:
            if level[w] < lu:
                level[w] = lu
            indeg[w] -= 1
            if indeg[w] == 0:
                released.append(w)
        if len(released) > 1:
            released.sort()
        queue.extend(released)
    if len(order) != len(out):
        raise CycleDetected(f"{len(out) - len(order)} vertices lie on or behind a directed cycle")
    if mode == "compact":
        return level
    return {u: i for i, u in enumerate(order)}


PAIRS = ((1, 2), (0, 2), (0, 1))


def all_delta_xy(tri: PlaneTri, rel: RegularEdgeLabeling) -> list[DeltaXY]:
    """The three st-graphs, indexed by the axis they number."""
    return [build_delta_xy(tri, rel, p) for p in PAIRS]


def dump_rel(rel: RegularEdgeLabeling) -> dict:
    return {
        "root": list(rel.tri.root),
        "arcs": [[t, h, c] for t, h, c in rel.arcs()],
    }
