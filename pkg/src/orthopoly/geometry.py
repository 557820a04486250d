"""Coordinates, gluing, geometric validation and isometric drawings.

Coordinates are never manipulated numerically while polyhedra are being
glued together.  Each axis keeps a :class:`CoordSeq`, a doubly linked list
of coordinate slots in increasing order; faces (or, for edge gluing,
vertices) point at slots, a glued piece is spliced in next to the slot it
hangs from, and integer values are read off at the very end by ranking the
list.
"""

from __future__ import annotations

import json
import math
from collections import defaultdict, deque
from dataclasses import dataclass, field

from .errors import HingeMismatch, MalformedInput, NotCornerMode
from .euler_tri import PlaneTri
from .graph_core import AXES, edge_key
from .labeling import RegularEdgeLabeling, all_delta_xy, st_number

Point = tuple[int, int, int]
HEAD, TAIL = -1, -2


# ---------------------------------------------------------------------------
# Polyhedron documents
# ---------------------------------------------------------------------------


@dataclass
class Face:
    axis: int
    plane: int
    cycle: list[int]


@dataclass
class OrthoPolyhedron:
    mode: str
    vertices: list[Point]
    faces: list[Face]
    hidden_vertex: int | None = None

    def edges(self) -> list[tuple[int, int]]:
        out = set()
        for f in self.faces:
            c = f.cycle
            for i in range(len(c)):
                out.add(edge_key(c[i], c[(i + 1) % len(c)]))
        return sorted(out)

    def to_dict(self) -> dict:
        doc = {
            "mode": self.mode,
            "vertices": [list(p) for p in self.vertices],
            "faces": [{"axis": AXES[f.axis], "plane": f.plane, "cycle": list(f.cycle)} for f in self.faces],
        }
        if self.hidden_vertex is not None:
            doc["hidden_vertex"] = self.hidden_vertex
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"

    def to_obj(self) -> str:
        lines = [f"# orthopoly {self.mode} realization"]
        lines += [f"v {x} {y} {z}" for x, y, z in self.vertices]
        lines += ["f " + " ".join(str(v + 1) for v in f.cycle) for f in self.faces]
        return "\n".join(lines) + "\n"


def polyhedron_from_dict(doc: object) -> OrthoPolyhedron:
    """Parse a realization document, raising :class:`MalformedInput` on bad shape."""
    if not isinstance(doc, dict):
        raise MalformedInput("realization document must be an object")
    mode = doc.get("mode")
    if mode not in ("corner", "xyz", "simple"):
        raise MalformedInput(f"unknown mode {mode!r}")
    verts = doc.get("vertices")
    if not isinstance(verts, list):
        raise MalformedInput("'vertices' must be a list")
    points: list[Point] = []
    for p in verts:
        if not (isinstance(p, list) and len(p) == 3 and all(isinstance(c, int) and not isinstance(c, bool) for c in p)):
            raise MalformedInput(f"vertex {p!r} is not an integer triple")
        points.append((p[0], p[1], p[2]))
    faces_doc = doc.get("faces")
    if not isinstance(faces_doc, list):
        raise MalformedInput("'faces' must be a list")
    faces = []
    for f in faces_doc:
        if not isinstance(f, dict) or f.get("axis") not in AXES:
            raise MalformedInput(f"face {f!r} lacks a valid axis")
        cyc = f.get("cycle")
        plane = f.get("plane")
        if not isinstance(plane, int) or not isinstance(cyc, list) or len(cyc) < 3:
            raise MalformedInput(f"face {f!r} lacks a plane or a cycle")
        for v in cyc:
            if not isinstance(v, int) or not 0 <= v < len(points):
                raise MalformedInput(f"face cycle refers to unknown vertex {v!r}")
        faces.append(Face(AXES.index(f["axis"]), plane, list(cyc)))
    hidden = doc.get("hidden_vertex")
    if hidden is not None and not (isinstance(hidden, int) and 0 <= hidden < len(points)):
        raise MalformedInput(f"hidden vertex {hidden!r} is not a vertex")
    return OrthoPolyhedron(mode, points, faces, hidden)


def parse_polyhedron(text: str) -> OrthoPolyhedron:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedInput(f"not JSON: {exc}") from exc
    return polyhedron_from_dict(doc)


# ---------------------------------------------------------------------------
# Linked coordinate lists
# ---------------------------------------------------------------------------


class CoordSeq:
    """Sorted coordinate slots of one axis as a doubly linked list."""

    def __init__(self) -> None:
        self.nxt: dict[int, int] = {HEAD: TAIL}
        self.prv: dict[int, int] = {TAIL: HEAD}
        self._count = 0

    def __len__(self) -> int:
        return self._count

    def new_slots(self, k: int) -> list[int]:
        base = self._count
        self._count += k
        return list(range(base, base + k))

    def _link_after(self, anchor: int, slots: list[int]) -> None:
        after = self.nxt[anchor]
        prev = anchor
        nxt, prv = self.nxt, self.prv
        for s in slots:
            nxt[prev] = s
            prv[s] = prev
            prev = s
        nxt[prev] = after
        prv[after] = prev

    def append(self, slots: list[int]) -> None:
        self._link_after(self.prv[TAIL], slots)

    def insert_after(self, anchor: int, slots: list[int]) -> None:
        """Place ``slots`` (already in increasing order) right after ``anchor``."""
        self._link_after(anchor, slots)

    def insert_before(self, anchor: int, slots: list[int]) -> None:
        """Place ``slots`` (already in increasing order) right before ``anchor``."""
        self._link_after(self.prv[anchor], slots)

    def order(self) -> list[int]:
        out = []
        s = self.nxt[HEAD]
        nxt = self.nxt
        while s != TAIL:
            out.append(s)
            s = nxt[s]
        return out

    def ranks(self, keep: set[int] | None = None) -> dict[int, int]:
        """Position of each slot, counting only slots in ``keep`` when given."""
        out: dict[int, int] = {}
        i = 0
        for s in self.order():
            if keep is None or s in keep:
                out[s] = i
                i += 1
        return out


def _splice(seq: CoordSeq, anchor: int, values: list[int], sign: int) -> dict[int, int]:
    """New slots for positive local ``values`` hung off ``anchor`` on side ``sign``."""
    vals = sorted(values)
    slots = seq.new_slots(len(vals))
    mapping = dict(zip(vals, slots))
    if sign > 0:
        seq.insert_after(anchor, slots)
    else:
        seq.insert_before(anchor, slots[::-1])
    return mapping


# ---------------------------------------------------------------------------
# Corner polyhedra from a labeling
# ---------------------------------------------------------------------------


def vertex_axis(tri: PlaneTri, v: int) -> int:
    """Axis perpendicular to the face dual to ``v``: the color missing around it."""
    r = tri.rot[v]
    return 3 - tri.color(v, r[0]) - tri.color(v, r[1])


def plane_numbers(tri: PlaneTri, rel: RegularEdgeLabeling, numbering: str) -> dict[int, tuple[int, int]]:
    """Raw st-numbers of the face planes: ``{dual vertex: (axis, value)}``."""
    axis_of = {v: vertex_axis(tri, v) for v in tri.rot}
    out: dict[int, tuple[int, int]] = {}
    for gr in all_delta_xy(tri, rel):
        num = st_number(gr, numbering)
        k = gr.axis
        for v, a in axis_of.items():
            if a == k:
                out[v] = (k, num[v])
    return out


def compress_planes(planes: dict[int, tuple[int, int]]) -> dict[int, tuple[int, int]]:
    """Replace each value by its rank among the values used on its axis."""
    used: list[set[int]] = [set(), set(), set()]
    for a, val in planes.values():
        used[a].add(val)
    rank = [{val: i for i, val in enumerate(sorted(u))} for u in used]
    return {v: (a, rank[a][val]) for v, (a, val) in planes.items()}


def corner_coordinates(
    tri: PlaneTri, rel: RegularEdgeLabeling, numbering: str = "compact"
) -> dict[int, tuple[int, int]]:
    """Face planes of the corner polyhedron defined by ``rel``.

    ``compact`` numbers by longest paths and then ranks the values used on
    each axis; ``distinct`` keeps the first-in first-out positions, so no
    two faces are coplanar.
    """
    planes = plane_numbers(tri, rel, numbering)
    return compress_planes(planes) if numbering == "compact" else planes


def vertex_points(
    faces_at: list[tuple[int, int, int]], planes: dict[int, tuple[int, int]]
) -> list[Point]:
    """Coordinates of primal vertices from the planes of their three faces."""
    pts: list[Point] = []
    for fs in faces_at:
        c = [0, 0, 0]
        seen = 0
        for f in fs:
            a, val = planes[f]
            c[a] = val
            seen |= 1 << a
        if seen != 7:
            raise HingeMismatch(f"faces {fs} do not span three axes")
        pts.append((c[0], c[1], c[2]))
    return pts


# ---------------------------------------------------------------------------
# Gluing corner polyhedra at vertices
# ---------------------------------------------------------------------------


class PlaneAssembly:
    """Face-plane slots of a polyhedron being grown by corner gluings."""

    def __init__(self, distinct: bool = False) -> None:
        self.seqs = [CoordSeq(), CoordSeq(), CoordSeq()]
        self.slot: dict[int, int] = {}
        self.axis: dict[int, int] = {}
        self.distinct = distinct

    def _values(self, vals: set[int], floor: int) -> list[int]:
        if self.distinct and vals:
            return list(range(floor, max(vals) + 1))
        return sorted(v for v in vals if v >= floor)

    def add_root(self, planes: dict[int, tuple[int, int]]) -> None:
        by_axis: list[set[int]] = [set(), set(), set()]
        for a, val in planes.values():
            by_axis[a].add(val)
        maps = []
        for a in range(3):
            vals = self._values(by_axis[a], 0)
            slots = self.seqs[a].new_slots(len(vals))
            self.seqs[a].append(slots)
            maps.append(dict(zip(vals, slots)))
        for v, (a, val) in planes.items():
            self.slot[v] = maps[a][val]
            self.axis[v] = a

    def glue_corner(
        self,
        corners: dict[int, int],
        signs: tuple[int, int, int],
        planes: dict[int, tuple[int, int]],
    ) -> None:
        """Splice a corner polyhedron in place of a vertex.

        ``corners[a]`` is the shared face perpendicular to axis ``a`` (its
        local value must be 0) and ``signs[a]`` says on which side of that
        face's slot the new piece grows.
        """
        by_axis: list[set[int]] = [set(), set(), set()]
        for v, (a, val) in planes.items():
            if v in corners.values():
                if corners.get(a) != v or val != 0:
                    raise HingeMismatch(f"shared face {v} is not the back face of axis {a}")
                continue
            by_axis[a].add(val)
        maps = []
        for a in range(3):
            anchor_face = corners.get(a)
            if anchor_face not in self.slot or self.axis[anchor_face] != a:
                raise HingeMismatch(f"no parent face perpendicular to axis {a} at the glued vertex")
            vals = self._values(by_axis[a], 1)
            maps.append(_splice(self.seqs[a], self.slot[anchor_face], vals, signs[a]))
        for v, (a, val) in planes.items():
            if v in self.slot:
                continue
            self.slot[v] = maps[a][val]
            self.axis[v] = a

    def finalize(self, compact: bool = True) -> dict[int, tuple[int, int]]:
        """List ranking: every face gets the position of its slot."""
        out: dict[int, tuple[int, int]] = {}
        for a in range(3):
            keep = {s for f, s in self.slot.items() if self.axis[f] == a} if compact else None
            rank = self.seqs[a].ranks(keep)
            for f, s in self.slot.items():
                if self.axis[f] == a:
                    out[f] = (a, rank[s])
        return out


def glue_corner_at_vertex(
    assembly: PlaneAssembly,
    parent_tri: PlaneTri,
    parent_planes: dict[int, tuple[int, int]],
    parent_signs: tuple[int, int, int],
    face: tuple[int, int, int],
    child_planes: dict[int, tuple[int, int]],
) -> tuple[int, int, int]:
    """Replace the vertex dual to ``face`` of the parent by a corner polyhedron.

    The child's hidden vertex is dual to the same triangle.  For every axis
    the child grows from the shared face plane towards the parent's edge
    along that axis; the side is read from the parent's own numbering,
    composed with the reflections already applied to the parent.  Returns
    the child's reflections for its own children.
    """
    a, b, c = face
    corners: dict[int, int] = {}
    signs = [0, 0, 0]
    for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
        # z is the face perpendicular to the axis of edge xy; across xy lies
        # the neighbouring vertex, whose plane on that axis is the apex w
        k = parent_planes[z][0]
        w = parent_tri.third(y, x)
        if w == z:
            w = parent_tri.third(x, y)
        if parent_planes[w][0] != k:
            raise HingeMismatch(f"apex {w} across edge {(x, y)} is not perpendicular to axis {k}")
        d = parent_planes[w][1] - parent_planes[z][1]
        if d == 0:
            raise HingeMismatch(f"edge along axis {k} at the glued vertex has length zero")
        corners[k] = z
        signs[k] = parent_signs[k] * (1 if d > 0 else -1)
    sg = (signs[0], signs[1], signs[2])
    assembly.glue_corner(corners, sg, child_planes)
    return sg


# ---------------------------------------------------------------------------
# Gluing polyhedra along an edge
# ---------------------------------------------------------------------------


def _plane_axis(coords: dict[int, Point], cycle: list[int]) -> int:
    axes = [a for a in range(3) if len({coords[v][a] for v in cycle}) == 1]
    if len(axes) != 1:
        raise HingeMismatch(f"face {cycle} is not a planar axis-parallel polygon")
    return axes[0]


def _signed_area2(coords: dict[int, Point], cycle: list[int], i: int, j: int) -> int:
    s = 0
    k = len(cycle)
    for t in range(k):
        p, q = coords[cycle[t]], coords[cycle[(t + 1) % k]]
        s += p[i] * q[j] - q[i] * p[j]
    return s


def _sgn(x: int) -> int:
    return (x > 0) - (x < 0)


class BlockAssembly:
    """Vertex slots of a polyhedron grown by gluing whole pieces along edges."""

    def __init__(self) -> None:
        self.seqs = [CoordSeq(), CoordSeq(), CoordSeq()]
        self.vslot: dict[int, list[int]] = {}

    def add_block(self, coords: dict[int, Point]) -> None:
        for a in range(3):
            vals = sorted({p[a] for p in coords.values()})
            slots = self.seqs[a].new_slots(len(vals))
            self.seqs[a].append(slots)
            m = dict(zip(vals, slots))
            for v, p in coords.items():
                self.vslot.setdefault(v, [0, 0, 0])[a] = m[p[a]]

    def coordinates(self) -> dict[int, Point]:
        ranks = []
        for a in range(3):
            keep = {s[a] for s in self.vslot.values()}
            ranks.append(self.seqs[a].ranks(keep))
        return {v: (ranks[0][s[0]], ranks[1][s[1]], ranks[2][s[2]]) for v, s in self.vslot.items()}

    def glue_at_edge(
        self,
        p: int,
        q: int,
        face_pq: list[int],
        face_qp: list[int],
        child: dict[int, Point],
        u: int,
        w: int,
        face_wu: list[int],
        face_uw: list[int],
    ) -> None:
        """Glue ``child`` into the wedge of the parent edge ``pq``.

        The child has its hinge vertex ``u`` at the origin and ``w`` on an
        axis; after gluing the parent edge ``pq`` is replaced by the path
        ``p, u, ..., w, q``.  ``face_pq`` (left of the dart ``p -> q``) merges
        with the child face left of ``w -> u``; ``face_qp`` merges with the
        child face left of ``u -> w``.
        """
        cur = self.coordinates()
        if p not in cur or q not in cur:
            raise HingeMismatch(f"hinge edge {(p, q)} is not in the parent")
        if any(v in cur for v in child):
            raise HingeMismatch("child shares vertex ids with the parent")
        if child.get(u) != (0, 0, 0):
            raise HingeMismatch(f"child hinge vertex {u} is not at the origin")
        diff = [a for a in range(3) if cur[p][a] != cur[q][a]]
        cdiff = [a for a in range(3) if child[u][a] != child[w][a]]
        if len(diff) != 1 or len(cdiff) != 1:
            raise HingeMismatch("hinge edges are not axis-parallel")
        b0, c0 = diff[0], cdiff[0]
        b1, b2 = _plane_axis(cur, face_pq), _plane_axis(cur, face_qp)
        c1, c2 = _plane_axis(child, face_wu), _plane_axis(child, face_uw)
        if {b0, b1, b2} != {0, 1, 2} or {c0, c1, c2} != {0, 1, 2}:
            raise HingeMismatch("hinge faces do not meet at a right-angled wedge")
        s0 = _sgn(cur[q][b0] - cur[p][b0])
        # side of the edge on which each parent face lies, from its orientation
        area_qp = _signed_area2(cur, face_qp, b0, b1)
        area_pq = _signed_area2(cur, face_pq, b0, b2)
        sigma1 = _sgn(cur[p][b0] - cur[q][b0]) * _sgn(area_qp)
        sigma2 = _sgn(cur[q][b0] - cur[p][b0]) * _sgn(area_pq)
        if 0 in (s0, sigma1, sigma2):
            raise HingeMismatch("degenerate hinge")
        maps: list[dict[int, int]] = [{}, {}, {}]
        pslot = self.vslot[p]
        vals0 = sorted({pt[c0] for pt in child.values()})
        maps[b0] = _splice(self.seqs[b0], pslot[b0], vals0, s0) if s0 > 0 else \
            _splice_desc(self.seqs[b0], pslot[b0], vals0)
        for bk, ck, sg in ((b1, c1, sigma1), (b2, c2, sigma2)):
            vals = sorted({pt[ck] for pt in child.values()} - {0})
            m = _splice(self.seqs[bk], pslot[bk], vals, sg)
            m[0] = pslot[bk]
            maps[bk] = m
        src = {b0: c0, b1: c1, b2: c2}
        for v, pt in child.items():
            self.vslot[v] = [maps[a][pt[src[a]]] for a in range(3)]


def _splice_desc(seq: CoordSeq, anchor: int, values: list[int]) -> dict[int, int]:
    """Hang non-negative ``values`` below ``anchor``, value 0 closest to it."""
    vals = sorted(values)
    slots = seq.new_slots(len(vals))
    mapping = dict(zip(vals, slots))
    seq.insert_before(anchor, slots[::-1])
    return mapping


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


@dataclass
class ValidationReport:
    checks: dict[str, list[str]] = field(default_factory=dict)

    def add(self, name: str, problems: list[str]) -> None:
        self.checks[name] = problems

    @property
    def violations(self) -> list[str]:
        return [f"{k}: {m}" for k, ms in self.checks.items() for m in ms]

    @property
    def ok(self) -> bool:
        return not any(self.checks.values())

    def to_dict(self) -> dict:
        return {"ok": self.ok, "checks": {k: {"ok": not v, "violations": v} for k, v in self.checks.items()}}


def _in_plane_axes(axis: int) -> tuple[int, int]:
    return ((1, 2), (0, 2), (0, 1))[axis]


def check_topology(p: OrthoPolyhedron) -> list[str]:
    bad = []
    dart_count: dict[tuple[int, int], int] = defaultdict(int)
    for f in p.faces:
        c = f.cycle
        if len(set(c)) != len(c):
            bad.append(f"face {c} repeats a vertex")
        for i in range(len(c)):
            dart_count[(c[i], c[(i + 1) % len(c)])] += 1
    edges = {edge_key(u, v) for u, v in dart_count}
    for u, v in edges:
        n = dart_count.get((u, v), 0) + dart_count.get((v, u), 0)
        if n != 2:
            bad.append(f"edge {(u, v)} lies on {n} faces")
    used = {v for f in p.faces for v in f.cycle}
    if len(used) != len(p.vertices):
        bad.append(f"{len(p.vertices) - len(used)} vertices lie on no face")
    if len(p.vertices) - len(edges) + len(p.faces) != 2:
        bad.append("Euler characteristic is not 2")
    return bad


def check_axis_parallel(p: OrthoPolyhedron) -> list[str]:
    """Edges differ in one coordinate; the three edges at a vertex use three axes."""
    bad = []
    axes_at: dict[int, list[int]] = defaultdict(list)
    pts = p.vertices
    for u, v in p.edges():
        d = [a for a in range(3) if pts[u][a] != pts[v][a]]
        if len(d) != 1:
            bad.append(f"edge {(u, v)} is not axis-parallel ({pts[u]} to {pts[v]})")
            continue
        axes_at[u].append(d[0])
        axes_at[v].append(d[0])
    for v in range(len(pts)):
        got = sorted(axes_at.get(v, []))
        if got != [0, 1, 2]:
            bad.append(f"vertex {v}: edges along axes {got}")
    if len(set(pts)) != len(pts):
        bad.append("two vertices share a point")
    return bad


def _segments_intersect(a: tuple, b: tuple) -> bool:
    """Closed axis-parallel 2-D segments ``((x0, y0), (x1, y1))``."""
    (ax0, ay0), (ax1, ay1) = a
    (bx0, by0), (bx1, by1) = b
    return (
        max(min(ax0, ax1), min(bx0, bx1)) <= min(max(ax0, ax1), max(bx0, bx1))
        and max(min(ay0, ay1), min(by0, by1)) <= min(max(ay0, ay1), max(by0, by1))
    )


def check_faces(p: OrthoPolyhedron) -> list[str]:
    """Planarity on the stated axis and a simple polygon boundary."""
    bad = []
    pts = p.vertices
    for fi, f in enumerate(p.faces):
        c = f.cycle
        if any(pts[v][f.axis] != f.plane for v in c):
            bad.append(f"face {fi} is not contained in {AXES[f.axis]} = {f.plane}")
            continue
        i, j = _in_plane_axes(f.axis)
        segs = [((pts[c[t]][i], pts[c[t]][j]), (pts[c[(t + 1) % len(c)]][i], pts[c[(t + 1) % len(c)]][j]))
                for t in range(len(c))]
        k = len(segs)
        hit = False
        for s in range(k):
            for t in range(s + 2, k):
                if s == 0 and t == k - 1:
                    continue
                if _segments_intersect(segs[s], segs[t]):
                    bad.append(f"face {fi}: boundary edges {s} and {t} touch")
                    hit = True
                    break
            if hit:
                break
        if not hit and len(c) % 2:
            bad.append(f"face {fi} has odd length")
    return bad


def _face_angles(p: OrthoPolyhedron, f: Face) -> list[int] | None:
    """Projected interior angle (degrees) at each corner of a face, or None if degenerate."""
    pts = p.vertices
    c = f.cycle
    k = len(c)
    i, j = _in_plane_axes(f.axis)
    area = _signed_area2({v: pts[v] for v in c}, c, i, j)
    if area == 0:
        return None
    out = []
    for t in range(k):
        prev, cur, nxt = pts[c[t - 1]], pts[c[t]], pts[c[(t + 1) % k]]
        din = (cur[i] - prev[i], cur[j] - prev[j])
        dout = (nxt[i] - cur[i], nxt[j] - cur[j])
        turn = din[0] * dout[1] - din[1] * dout[0]
        if turn == 0:
            return None
        convex = (turn > 0) == (area > 0)
        # directions of the two edges leaving the corner
        a = [-din[0], -din[1]]
        b = [dout[0], dout[1]]
        sa = _sgn(a[0]) or _sgn(a[1])
        sb = _sgn(b[0]) or _sgn(b[1])
        mixed = sa != sb
        if convex:
            out.append(60 if mixed else 120)
        else:
            out.append(300 if mixed else 240)
    return out


def _fat_staircase(p: OrthoPolyhedron, f: Face, angles: list[int]) -> str | None:
    """Return a description of the first violation, or None for a fat double staircase."""
    if any(a == 300 for a in angles):
        return "has a 5pi/3 corner"
    ext = [t for t, a in enumerate(angles) if a == 60]
    if len(ext) != 2:
        return f"has {len(ext)} pi/3 corners"
    k = len(angles)
    e1, e2 = ext
    chain_a = [(e1 + s) % k for s in range((e2 - e1) % k + 1)]
    chain_b = [(e1 - s) % k for s in range((e1 - e2) % k + 1)]
    for ch in (chain_a, chain_b):
        inner = [angles[t] for t in ch[1:-1]]
        for s in range(1, len(inner)):
            if inner[s] == inner[s - 1]:
                return "chain angles do not alternate"
    pts = p.vertices
    c = f.cycle
    i, j = _in_plane_axes(f.axis)

    def segs(ch: list[int]) -> tuple[int, list[int], list[int]]:
        first_axis = -1
        along_i, along_j = [], []
        for s in range(len(ch) - 1):
            u, v = pts[c[ch[s]]], pts[c[ch[s + 1]]]
            if u[i] != v[i]:
                along_i.append(u[j])
                if first_axis < 0:
                    first_axis = i
            else:
                along_j.append(u[i])
                if first_axis < 0:
                    first_axis = j
        return first_axis, along_i, along_j

    fa, ai, aj = segs(chain_a)
    fb, bi, bj = segs(chain_b)
    if fa == fb:
        return "both chains start along the same axis"
    if fa != i:
        ai, aj, bi, bj = bi, bj, ai, aj
    # segments along i: chain starting along i, then the other chain;
    # segments along j: the other chain first
    for seq in (ai + bi, bj + aj):
        if len(seq) > 1:
            inc = all(seq[s] < seq[s + 1] for s in range(len(seq) - 1))
            dec = all(seq[s] > seq[s + 1] for s in range(len(seq) - 1))
            if not (inc or dec):
                return "segment coordinates are not totally ordered"
    return None


def back_faces(p: OrthoPolyhedron) -> set[int]:
    h = p.hidden_vertex
    if h is None:
        return set()
    return {fi for fi, f in enumerate(p.faces) if h in f.cycle}


def check_corner(p: OrthoPolyhedron) -> tuple[list[str], list[str]]:
    """Fat double staircases and the per-vertex angle census."""
    stair: list[str] = []
    census: list[str] = []
    h = p.hidden_vertex
    if h is None:
        return ["corner realization names no hidden vertex"], []
    if p.vertices[h] != (0, 0, 0):
        stair.append(f"hidden vertex {h} is not at the origin")
    back = back_faces(p)
    if len(back) != 3:
        stair.append(f"hidden vertex lies on {len(back)} faces")
    for fi in back:
        if p.faces[fi].plane != 0:
            stair.append(f"back face {fi} is not on a coordinate plane")
    for v, pt in enumerate(p.vertices):
        if min(pt) < 0:
            stair.append(f"vertex {v} lies outside the positive orthant")
    angle_at: dict[int, list[int]] = defaultdict(list)
    on_back: set[int] = set()
    for fi, f in enumerate(p.faces):
        if fi in back:
            on_back.update(f.cycle)
            continue
        angles = _face_angles(p, f)
        if angles is None:
            stair.append(f"face {fi} is degenerate")
            continue
        why = _fat_staircase(p, f, angles)
        if why:
            stair.append(f"face {fi} {why}")
        for v, a in zip(f.cycle, angles):
            angle_at[v].append(a)
    side = _two_coloring(p, h)
    nbrs_h = {v for e in p.edges() if h in e for v in e if v != h}
    for v in range(len(p.vertices)):
        if v == h or v in nbrs_h:
            continue
        got = list(angle_at.get(v, []))
        if v in on_back:
            got.append(360 - sum(got))
        got.sort()
        expect = [60, 60, 240] if side[v] == side[h] else [120, 120, 120]
        if got != expect:
            census.append(f"vertex {v}: projected angles {got}, expected {expect}")
    return stair, census


def _two_coloring(p: OrthoPolyhedron, start: int) -> dict[int, int]:
    adj: dict[int, list[int]] = defaultdict(list)
    for u, v in p.edges():
        adj[u].append(v)
        adj[v].append(u)
    side = {start: 0}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in adj[u]:
            if v not in side:
                side[v] = 1 - side[u]
                queue.append(v)
    return side


def check_xyz_lines(p: OrthoPolyhedron) -> list[str]:
    """Every axis-parallel line holds at most two vertices."""
    bad = []
    for a in range(3):
        i, j = _in_plane_axes(a)
        count: dict[tuple[int, int], int] = defaultdict(int)
        for pt in p.vertices:
            count[(pt[i], pt[j])] += 1
        for key, c in sorted(count.items()):
            if c > 2:
                bad.append(f"line parallel to {AXES[a]} through {key} holds {c} vertices")
    return bad


def check_bounds(p: OrthoPolyhedron) -> list[str]:
    n = len(p.vertices)
    hi = -(-n // 4) - 1
    return [f"vertex {v} at {pt} leaves [0, {hi}]" for v, pt in enumerate(p.vertices)
            if min(pt) < 0 or max(pt) > hi]


def face_features(p: OrthoPolyhedron, f: Face) -> list[tuple[Point, Point]]:
    """Split a face into rectangles (as closed boxes ``(lo, hi)``) by vertical slabs."""
    pts = p.vertices
    c = f.cycle
    i, j = _in_plane_axes(f.axis)
    xs = sorted({pts[v][i] for v in c})
    horiz = []
    k = len(c)
    for t in range(k):
        u, v = pts[c[t]], pts[c[(t + 1) % k]]
        if u[i] != v[i]:
            horiz.append((min(u[i], v[i]), max(u[i], v[i]), u[j]))
    out = []
    for s in range(len(xs) - 1):
        x0, x1 = xs[s], xs[s + 1]
        ys = sorted(y for lo, hi, y in horiz if lo <= x0 and x1 <= hi)
        for t in range(0, len(ys) - 1, 2):
            lo = [0, 0, 0]
            hi = [0, 0, 0]
            lo[f.axis] = hi[f.axis] = f.plane
            lo[i], hi[i] = x0, x1
            lo[j], hi[j] = ys[t], ys[t + 1]
            out.append(((lo[0], lo[1], lo[2]), (hi[0], hi[1], hi[2])))
    return out


def check_intersections(p: OrthoPolyhedron) -> list[str]:
    """Pairwise feature test: faces may meet only along the edges or vertices they share."""
    pts = p.vertices
    feats = []
    for fi, f in enumerate(p.faces):
        for box in face_features(p, f):
            feats.append((box, fi))
    verts_of = [set(f.cycle) for f in p.faces]
    edges_of = []
    for f in p.faces:
        c = f.cycle
        edges_of.append({edge_key(c[t], c[(t + 1) % len(c)]) for t in range(len(c))})
    feats.sort(key=lambda item: item[0][0][0])
    bad = []
    reported: set[tuple[int, int]] = set()
    active: list = []
    for box, fi in feats:
        lo, hi = box
        active = [a for a in active if a[0][1][0] >= lo[0]]
        for (blo, bhi), gi in active:
            if gi == fi or (min(fi, gi), max(fi, gi)) in reported:
                continue
            ilo = tuple(max(lo[a], blo[a]) for a in range(3))
            ihi = tuple(min(hi[a], bhi[a]) for a in range(3))
            if any(ilo[a] > ihi[a] for a in range(3)):
                continue
            if _allowed_contact(ilo, ihi, verts_of[fi] & verts_of[gi], edges_of[fi] & edges_of[gi], pts):
                continue
            reported.add((min(fi, gi), max(fi, gi)))
            bad.append(f"faces {min(fi, gi)} and {max(fi, gi)} intersect near {ilo}")
        active.append((box, fi))
    return bad


def _allowed_contact(lo, hi, shared_v, shared_e, pts) -> bool:
    dims = sum(lo[a] != hi[a] for a in range(3))
    if dims == 0:
        if any(pts[v] == lo for v in shared_v):
            return True
        for u, v in shared_e:
            if _on_segment(lo, pts[u], pts[v]):
                return True
        return False
    if dims == 1:
        for u, v in shared_e:
            if _on_segment(lo, pts[u], pts[v]) and _on_segment(hi, pts[u], pts[v]):
                return True
    return False


def _on_segment(x, a, b) -> bool:
    return all(min(a[k], b[k]) <= x[k] <= max(a[k], b[k]) for k in range(3))


def validate_polyhedron(p: OrthoPolyhedron, coordinate_bound: bool = False) -> ValidationReport:
    """Run every geometric check that applies to the realization's mode."""
    rep = ValidationReport()
    rep.add("topology", check_topology(p))
    rep.add("axis_parallel", check_axis_parallel(p))
    rep.add("faces", check_faces(p))
    if p.mode == "corner":
        stair, census = check_corner(p)
        rep.add("staircase", stair)
        rep.add("angle_census", census)
    if p.mode == "xyz":
        rep.add("xyz_lines", check_xyz_lines(p))
    rep.add("intersections", check_intersections(p) if not rep.checks["faces"] else ["skipped: faces invalid"])
    if coordinate_bound:
        rep.add("bounds", check_bounds(p))
    return rep


# ---------------------------------------------------------------------------
# Isometric drawings
# ---------------------------------------------------------------------------


LATTICE_DIRECTIONS = ((1, 0), (0, 1), (1, 1))


def iso_point(pt: Point) -> tuple[int, int]:
    """Hexagonal-lattice coordinates of the projection along (1, 1, 1).

    The lattice basis is the image of the x and y unit vectors; the z unit
    vector maps to minus their sum.
    """
    x, y, z = pt
    return (x - z, y - z)


def lattice_to_plane(q: tuple[int, int]) -> tuple[float, float]:
    """Euclidean position of a lattice point (x image at 30 degrees, y at 150)."""
    a, b = q
    return ((a - b) * math.sqrt(3) / 2, (a + b) / 2)


@dataclass
class IsoDrawing:
    points: dict[int, tuple[int, int]]
    hidden_vertex: int
    hidden_point: tuple[int, int]
    paths: list[list[tuple[int, int]]]
    hidden_paths: list[int]

    @property
    def bends(self) -> int:
        return sum(max(0, len(path) - 2) for path in self.paths)

    def slopes_ok(self) -> bool:
        for path in self.paths:
            for s in range(len(path) - 1):
                da = path[s + 1][0] - path[s][0]
                db = path[s + 1][1] - path[s][1]
                if not ((da == 0) != (db == 0) or (da == db != 0)):
                    return False
        return True

    def to_svg(self, unit: float = 20.0) -> str:
        pts = [lattice_to_plane(q) for path in self.paths for q in path]
        xs = [x for x, _ in pts] or [0.0]
        ys = [-y for _, y in pts] or [0.0]
        pad = unit
        minx, miny = min(xs) * unit - pad, min(ys) * unit - pad
        w = (max(xs) - min(xs)) * unit + 2 * pad
        h = (max(ys) - min(ys)) * unit + 2 * pad
        out = [
            f'<svg xmlns="http://www.w3.org/2000/svg" viewBox="{minx:.2f} {miny:.2f} {w:.2f} {h:.2f}" '
            f'width="{w:.0f}" height="{h:.0f}">',
            '<g fill="none" stroke="black" stroke-width="1.5" stroke-linecap="round">',
        ]
        hidden = set(self.hidden_paths)
        for idx, path in enumerate(self.paths):
            coords = " ".join(
                f"{x * unit:.2f},{-y * unit:.2f}" for x, y in (lattice_to_plane(q) for q in path)
            )
            dash = ' stroke-dasharray="4 3"' if idx in hidden else ""
            out.append(f'<polyline points="{coords}"{dash}/>')
        out.append("</g>")
        out.append('<g fill="black">')
        for v, q in sorted(self.points.items()):
            x, y = lattice_to_plane(q)
            out.append(f'<circle cx="{x * unit:.2f}" cy="{-y * unit:.2f}" r="2.5"><title>{v}</title></circle>')
        x, y = lattice_to_plane(self.hidden_point)
        out.append(f'<circle cx="{x * unit:.2f}" cy="{-y * unit:.2f}" r="2.5" fill="white" stroke="black">'
                   f'<title>{self.hidden_vertex}</title></circle>')
        out.append("</g></svg>")
        return "\n".join(out) + "\n"


def isometric_project(p: OrthoPolyhedron) -> IsoDrawing:
    """Project a corner polyhedron along (1, 1, 1) onto the hexagonal lattice.

    Visible edges are straight.  The hidden vertex is drawn one unit beyond
    its z-axis neighbour, joined to it straight and to the other two
    neighbours by one-bend paths running outside the drawing.
    """
    if p.mode != "corner" or p.hidden_vertex is None:
        raise NotCornerMode("isometric drawings need a corner realization")
    h = p.hidden_vertex
    pts = p.vertices
    points = {v: iso_point(pt) for v, pt in enumerate(pts) if v != h}
    paths: list[list[tuple[int, int]]] = []
    hidden_paths: list[int] = []
    nbr = {}
    for u, v in p.edges():
        if h in (u, v):
            w = v if u == h else u
            axis = next(a for a in range(3) if pts[w][a] != pts[h][a])
            nbr[axis] = w
            continue
        paths.append([points[u], points[v]])
    c = pts[nbr[2]][2] if 2 in nbr else 0
    hp = (-c - 1, -c - 1)
    for axis, w in sorted(nbr.items()):
        q = points[w]
        if axis == 2:
            path = [hp, q]
        elif axis == 0:
            path = [hp, (q[0], hp[1]), q]
        else:
            path = [hp, (hp[0], q[1]), q]
        hidden_paths.append(len(paths))
        paths.append(path)
    return IsoDrawing(points, h, hp, paths, hidden_paths)
