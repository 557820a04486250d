"""Enumeration of small Eulerian triangulations (duals of cubic bipartite polyhedra).

Triangulations are plain lists of counterclockwise triangles on vertices
``0..V-1``.  Two generators are provided:

``eulerian_triangulations``
    closure of the octahedron and the 11-vertex indecomposable triangulation
    under operations that invert the cycle-cover simplification steps
    (pair insertion on an edge, splitting a vertex into three, gluing two
    triangulations along a face, along the links of degree-4 vertices and
    along the link of an edge between two degree-4 vertices);

``all_triangulations``
    the classical vertex-splitting closure of K4, which reaches every
    triangulation; filtering it by even degrees gives an independent
    reference used to check the first generator on small sizes.
"""

from __future__ import annotations

import itertools
import json
from functools import lru_cache
from importlib import resources

from .euler_tri import rotation_from_triangles
from .errors import NotPolyhedral
from .instances import delta11_faces, octahedron_faces

Tri = tuple[int, int, int]
Faces = list[Tri]


# ---------------------------------------------------------------------------
# Canonical form
# ---------------------------------------------------------------------------


def _rotations(faces: Faces) -> dict[int, list[int]]:
    return rotation_from_triangles(faces)


def canonical_code(faces: Faces) -> tuple[int, ...]:
    """Isomorphism invariant of an embedded triangulation (mirror images identified)."""
    rot = _rotations(faces)
    mindeg = min(len(r) for r in rot.values())
    starts = [v for v, r in rot.items() if len(r) == mindeg]
    best: tuple[int, ...] | None = None
    for mirror in (False, True):
        rr = {v: (r[::-1] if mirror else r) for v, r in rot.items()}
        pos = {v: {w: i for i, w in enumerate(r)} for v, r in rr.items()}
        for v in starts:
            for w in rr[v]:
                code = _bfs_code(rr, pos, v, w)
                if best is None or code < best:
                    best = code
    assert best is not None
    return (len(rot),) + best


def _bfs_code(rr, pos, v: int, w: int) -> tuple[int, ...]:
    label = {v: 0}
    ref = {v: w}
    order = [v]
    code: list[int] = []
    i = 0
    while i < len(order):
        x = order[i]
        i += 1
        r = rr[x]
        k = len(r)
        s = pos[x][ref[x]]
        for j in range(k):
            y = r[(s + j) % k]
            if y not in label:
                label[y] = len(order)
                ref[y] = x
                order.append(y)
            code.append(label[y])
        code.append(-1)
    return tuple(code)


def relabel(faces: Faces) -> Faces:
    verts = sorted({v for f in faces for v in f})
    m = {v: i for i, v in enumerate(verts)}
    return [(m[a], m[b], m[c]) for a, b, c in faces]


def is_simple_sphere(faces: Faces) -> bool:
    try:
        rot = _rotations(faces)
    except NotPolyhedral:
        return False
    for v, r in rot.items():
        if len(set(r)) != len(r) or v in r or len(r) < 3:
            return False
    e = sum(len(r) for r in rot.values()) // 2
    return len(rot) - e + len(faces) == 2


def is_eulerian(faces: Faces) -> bool:
    return all(len(r) % 2 == 0 for r in _rotations(faces).values())


# ---------------------------------------------------------------------------
# Local operations
# ---------------------------------------------------------------------------


def _fresh(faces: Faces) -> int:
    return 1 + max(v for f in faces for v in f)


def _third(faces_by_dart: dict[tuple[int, int], Tri], a: int, b: int) -> int:
    f = faces_by_dart[(a, b)]
    return f[(f.index(a) + 2) % 3]


def _by_dart(faces: Faces) -> dict[tuple[int, int], Tri]:
    out = {}
    for f in faces:
        a, b, c = f
        out[(a, b)] = f
        out[(b, c)] = f
        out[(c, a)] = f
    return out


def insert_pair(faces: Faces, t: int, u: int) -> Faces:
    """Replace edge ``tu`` by two adjacent degree-4 vertices ``p``, ``q``."""
    bd = _by_dart(faces)
    w1 = _third(bd, t, u)
    w2 = _third(bd, u, t)
    p = _fresh(faces)
    q = p + 1
    drop = {bd[(t, u)], bd[(u, t)]}
    out = [f for f in faces if f not in drop]
    out += [(t, p, w1), (p, q, w1), (q, u, w1), (u, q, w2), (q, p, w2), (p, t, w2)]
    return out


def split_vertex_in_three(faces: Faces, g: int, a: int, c: int) -> Faces:
    """Split ``g`` into ``b``, ``p``, ``d`` where ``p`` has degree four (inverse contraction)."""
    rot = _rotations(faces)
    r = rot[g]
    i, j = r.index(a), r.index(c)
    k = len(r)
    side_b = {r[(i + s) % k] for s in range((j - i) % k + 1)}
    b = g
    p = _fresh(faces)
    d = p + 1
    out: Faces = []
    for f in faces:
        if g not in f:
            out.append(f)
            continue
        x, y, z = f
        while x != g:
            x, y, z = y, z, x
        # fan triangle (g, y, z): on b's side when both y and z lie in a..c
        nv = b if (y in side_b and z in side_b and not (y == c and z == a)) else d
        out.append((nv, y, z))
    out += [(p, a, b), (p, b, c), (p, c, d), (p, d, a)]
    return out


def split_vertex(faces: Faces, g: int, a: int, c: int) -> Faces:
    """Classical vertex split: ``g`` becomes adjacent ``g1``, ``g2`` sharing ``a`` and ``c``."""
    rot = _rotations(faces)
    r = rot[g]
    i, j = r.index(a), r.index(c)
    k = len(r)
    side1 = {r[(i + s) % k] for s in range((j - i) % k + 1)}
    g1 = g
    g2 = _fresh(faces)
    out: Faces = []
    for f in faces:
        if g not in f:
            out.append(f)
            continue
        x, y, z = f
        while x != g:
            x, y, z = y, z, x
        nv = g1 if (y in side1 and z in side1 and not (y == c and z == a)) else g2
        out.append((nv, y, z))
    out += [(a, g1, g2), (c, g2, g1)]
    return out


def insert_octahedron(faces: Faces, face: Tri) -> Faces:
    a, b, c = face
    d = _fresh(faces)
    e, f = d + 1, d + 2
    out = [t for t in faces if t != face]
    out += [(a, b, d), (b, c, e), (c, a, f), (b, e, d), (c, f, e), (a, d, f), (d, e, f)]
    return out


def _hole(faces: Faces, removed_vertices: set[int], removed_faces: set[Tri]) -> tuple[Faces, list[int]]:
    """Delete faces; return the remaining faces and the hole boundary.

    The boundary is listed so that the deleted region lies on its left.
    """
    gone = {f for f in faces if f in removed_faces or set(f) & removed_vertices}
    kept = [f for f in faces if f not in gone]
    darts = set()
    for a, b, c in gone:
        for x, y in ((a, b), (b, c), (c, a)):
            if x not in removed_vertices and y not in removed_vertices:
                darts.add((x, y))
    # boundary darts of the hole whose reverse is not itself a hole dart
    boundary = {(x, y) for (x, y) in darts if (y, x) not in darts}
    nxt = {x: y for x, y in boundary}
    if len(nxt) != len(boundary):
        return kept, []
    start = min(nxt)
    cyc = [start]
    while nxt[cyc[-1]] != start:
        cyc.append(nxt[cyc[-1]])
        if len(cyc) > len(nxt):
            return kept, []
    if len(cyc) != len(nxt):
        return kept, []
    return kept, cyc


def glue(
    a_faces: Faces, a_cycle: list[int], b_faces: Faces, b_cycle: list[int], shift: int
) -> Faces:
    """Identify two hole boundaries of equal length (orientations opposite)."""
    off = 1 + max([v for f in a_faces for v in f] + list(a_cycle))
    k = len(a_cycle)
    ident = {b_cycle[(shift - i) % k]: a_cycle[i] for i in range(k)}
    out = list(a_faces)
    for f in b_faces:
        out.append(tuple(ident.get(v, v + off) for v in f))  # type: ignore[arg-type]
    return out


def mirror(faces: Faces) -> Faces:
    return [(a, c, b) for a, b, c in faces]


def _holes(faces: Faces) -> dict[int, list[tuple[Faces, list[int]]]]:
    """All holes usable for gluing, keyed by boundary length."""
    rot = _rotations(faces)
    out: dict[int, list[tuple[Faces, list[int]]]] = {3: [], 4: []}
    for f in faces:
        out[3].append(_hole(faces, set(), {f}))
    for v, r in rot.items():
        if len(r) == 4:
            out[4].append(_hole(faces, {v}, set()))
            for w in r:
                if v < w and len(rot[w]) == 4:
                    out[4].append(_hole(faces, {v, w}, set()))
    return out


# ---------------------------------------------------------------------------
# Generators
# ---------------------------------------------------------------------------


def _add(store: dict[int, dict[tuple[int, ...], Faces]], faces: Faces, max_v: int) -> None:
    faces = relabel(faces)
    nv = 1 + max(v for f in faces for v in f)
    if nv > max_v or not is_simple_sphere(faces) or not is_eulerian(faces):
        return
    code = canonical_code(faces)
    store.setdefault(nv, {}).setdefault(code, faces)


def eulerian_triangulations(max_v: int) -> dict[int, list[Faces]]:
    """Every Eulerian triangulation with at most ``max_v`` vertices, up to isomorphism."""
    store: dict[int, dict[tuple[int, ...], Faces]] = {}
    _add(store, octahedron_faces(), max_v)
    _add(store, delta11_faces(), max_v)
    holes_cache: dict[tuple[int, ...], dict[int, list[tuple[Faces, list[int]]]]] = {}
    for nv in range(6, max_v + 1):
        # binary gluings producing nv vertices from already finished sizes
        for na in range(6, nv):
            for nb in range(6, na + 1):
                for k, loss in ((3, 3), (4, 6), (4, 8)):
                    if na + nb - loss != nv:
                        continue
                    for ca, fa in list(store.get(na, {}).items()):
                        for cb, fb in list(store.get(nb, {}).items()):
                            _glue_all(store, fa, fb, k, loss, max_v, holes_cache, ca, cb)
        for code, faces in list(store.get(nv, {}).items()):
            rot = _rotations(faces)
            for t, r in rot.items():
                for u in r:
                    if t < u:
                        _add(store, insert_pair(faces, t, u), max_v)
                k = len(r)
                for i in range(k):
                    for j in range(i + 2, k, 2):
                        _add(store, split_vertex_in_three(faces, t, r[i], r[j]), max_v)
            for f in faces:
                _add(store, insert_octahedron(faces, f), max_v)
    return {nv: list(store[nv].values()) for nv in sorted(store)}


def _glue_all(store, fa, fb, k, loss, max_v, cache, ca, cb) -> None:
    if ca not in cache:
        cache[ca] = _holes(fa)
    for b_variant in (fb, mirror(fb)):
        hb_all = _holes(b_variant)
        for a_kept, a_cyc in cache[ca][k]:
            if len(a_cyc) != k:
                continue
            for b_kept, b_cyc in hb_all[k]:
                if len(b_cyc) != k:
                    continue
                # vertex loss must match the requested operation
                lost = (len({v for f in fa for v in f}) - len({v for f in a_kept for v in f} | set(a_cyc))) + (
                    len({v for f in b_variant for v in f}) - len({v for f in b_kept for v in f} | set(b_cyc))
                ) + k
                if lost != loss:
                    continue
                for shift in range(k):
                    _add(store, glue(a_kept, a_cyc, b_kept, b_cyc, shift), max_v)


def all_triangulations(max_v: int) -> dict[int, list[Faces]]:
    """Every triangulation of the sphere with at most ``max_v`` vertices (vertex splitting from K4)."""
    k4: Faces = [(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)]
    store: dict[int, dict[tuple[int, ...], Faces]] = {4: {canonical_code(k4): k4}}
    for nv in range(4, max_v):
        for faces in list(store.get(nv, {}).values()):
            rot = _rotations(faces)
            for g, r in rot.items():
                for a, c in itertools.permutations(r, 2):
                    new = relabel(split_vertex(faces, g, a, c))
                    if is_simple_sphere(new):
                        store.setdefault(nv + 1, {}).setdefault(canonical_code(new), new)
    return {nv: list(d.values()) for nv, d in sorted(store.items())}


# ---------------------------------------------------------------------------
# Bundled corpus
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def bundled_corpus() -> dict[int, list[Faces]]:
    """Eulerian triangulations shipped with the package (generated offline)."""
    text = resources.files("orthopoly").joinpath("data/eulerian_corpus.json").read_text()
    raw = json.loads(text)
    return {int(k): [[tuple(f) for f in faces] for faces in v] for k, v in raw.items()}


def write_corpus(path: str, max_v: int) -> dict[int, int]:
    corpus = eulerian_triangulations(max_v)
    with open(path, "w") as fh:
        json.dump({str(k): v for k, v in corpus.items()}, fh, separators=(",", ":"))
        fh.write("\n")
    return {k: len(v) for k, v in corpus.items()}


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def random_eulerian(
    target_v: int,
    seed: int = 0,
    glue_prob: float = 0.15,
    octahedra: bool = False,
) -> Faces:
    """A random Eulerian triangulation with roughly ``target_v`` vertices.

    Grows the octahedron by pair insertions, vertex splits and gluings with
    smaller random triangulations along degree-4 links (so separating
    4-cycles of both color patterns occur).  With ``octahedra`` some faces
    also receive a nested octahedron, creating separating triangles.
    """
    import random

    rng = random.Random(seed)
    faces = octahedron_faces()
    nv = 6
    while nv < target_v:
        r = rng.random()
        if octahedra and r < 0.1:
            new = insert_octahedron(faces, rng.choice(faces))
        elif r < 0.1 + glue_prob and target_v - nv >= 6:
            other = random_eulerian(rng.randint(6, min(20, target_v - nv + 6)), rng.randrange(1 << 30), 0.0)
            new = _random_glue(rng, faces, other)
            if new is None:
                continue
        else:
            rot = _rotations(faces)
            if rng.random() < 0.5:
                t = rng.choice(sorted(rot))
                new = insert_pair(faces, t, rng.choice(rot[t]))
            else:
                big = [v for v, rr in rot.items() if len(rr) >= 6]
                if not big:
                    continue
                g = rng.choice(big)
                rr = rot[g]
                i = rng.randrange(len(rr))
                j = (i + 2 * rng.randint(1, (len(rr) - 2) // 2)) % len(rr)
                new = split_vertex_in_three(faces, g, rr[i], rr[j])
        new = relabel(new)
        if is_simple_sphere(new) and is_eulerian(new):
            faces = new
            nv = 1 + max(v for f in faces for v in f)
    return faces


def _random_glue(rng, fa: Faces, fb: Faces) -> Faces | None:
    ha = [h for h in _holes(fa)[4] if len(h[1]) == 4]
    hb = [h for h in _holes(fb)[4] if len(h[1]) == 4]
    if not ha or not hb:
        return None
    a_kept, a_cyc = rng.choice(ha)
    b_kept, b_cyc = rng.choice(hb)
    return glue(a_kept, a_cyc, b_kept, b_cyc, rng.randrange(4))


class _Growing:
    """Triangulation stored as a dart -> apex map, grown by local operations."""

    def __init__(self, faces: Faces) -> None:
        self.apex: dict[tuple[int, int], int] = {}
        self.added: list[tuple[int, int]] = []
        self.n = 0
        for f in faces:
            self._add(*f)
            self.n = max(self.n, *f)
        self.n += 1

    def _add(self, a: int, b: int, c: int) -> None:
        self.apex[(a, b)] = c
        self.apex[(b, c)] = a
        self.apex[(c, a)] = b
        self.added += ((a, b), (b, c), (c, a))

    def _del(self, a: int, b: int, c: int) -> None:
        del self.apex[(a, b)], self.apex[(b, c)], self.apex[(c, a)]

    def rotation(self, v: int, start: int) -> list[int]:
        out = [start]
        w = self.apex[(v, start)]
        while w != start:
            out.append(w)
            w = self.apex[(v, w)]
        return out

    def insert_pair(self, t: int, u: int) -> None:
        w1, w2 = self.apex[(t, u)], self.apex[(u, t)]
        p, q = self.n, self.n + 1
        self.n += 2
        self._del(t, u, w1)
        self._del(u, t, w2)
        for f in ((t, p, w1), (p, q, w1), (q, u, w1), (u, q, w2), (q, p, w2), (p, t, w2)):
            self._add(*f)

    def split_in_three(self, g: int, rot: list[int], i: int, j: int) -> None:
        a, c = rot[i], rot[j]
        k = len(rot)
        side_b = {rot[(i + s) % k] for s in range((j - i) % k + 1)}
        p, d = self.n, self.n + 1
        self.n += 2
        for s in range(k):
            y, z = rot[s], rot[(s + 1) % k]
            self._del(g, y, z)
            nv = g if (y in side_b and z in side_b and not (y == c and z == a)) else d
            self._add(nv, y, z)
        for f in ((p, a, g), (p, g, c), (p, c, d), (p, d, a)):
            self._add(*f)

    def insert_octahedron(self, a: int, b: int) -> None:
        c = self.apex[(a, b)]
        d, e, f = self.n, self.n + 1, self.n + 2
        self.n += 3
        self._del(a, b, c)
        for t in ((a, b, d), (b, c, e), (c, a, f), (b, e, d), (c, f, e), (a, d, f), (d, e, f)):
            self._add(*t)

    def faces(self) -> Faces:
        return [(a, b, c) for (a, b), c in self.apex.items() if a < b and a < c]


def fast_random_eulerian(target_v: int, seed: int = 0, octahedron_prob: float = 0.0) -> Faces:
    """Large random Eulerian triangulation in time linear in its size."""
    import random

    rng = random.Random(seed)
    gr = _Growing(octahedron_faces())
    darts = list(gr.apex)
    gr.added.clear()
    while gr.n < target_v:
        a, b = darts[rng.randrange(len(darts))]
        if (a, b) not in gr.apex:
            continue
        r = rng.random()
        if r < octahedron_prob:
            gr.insert_octahedron(a, b)
        elif r < 0.5:
            gr.insert_pair(a, b)
        else:
            rot = gr.rotation(a, b)
            k = len(rot)
            if k < 6:
                gr.insert_pair(a, b)
            else:
                j = 2 * rng.randint(1, (k - 2) // 2)
                gr.split_in_three(a, rot, 0, j)
        darts.extend(gr.added)
        gr.added.clear()
    return gr.faces()


# ---------------------------------------------------------------------------
# 2-connected instances
# ---------------------------------------------------------------------------


def random_biconnected(atoms: int, seed: int = 0, atom_size: tuple[int, int] = (6, 12)):
    """A 2-connected cubic bipartite planar graph built from random 3-connected atoms.

    Each new atom is attached to the graph built so far by deleting one edge
    from each and joining the four freed endpoints crosswise (respecting the
    bipartition), so every link is a 2-edge cut.  Returns a
    :class:`GraphDocument` without an embedding.
    """
    import random

    from .graph_core import GraphDocument, UndirectedGraph, bipartition, edge_key
    from .instances import primal_doc

    rng = random.Random(seed)

    def atom() -> tuple[int, list[tuple[int, int]]]:
        faces = random_eulerian(rng.randint(*atom_size), rng.randrange(1 << 30))
        g = primal_doc(faces).graph
        return g.n, list(g.edges)

    n, edges = atom()
    for _ in range(atoms - 1):
        side = bipartition(UndirectedGraph(n, sorted(edges))).side
        m, other = atom()
        oside = bipartition(UndirectedGraph(m, sorted(other))).side
        a, b = rng.choice(edges)
        if side[a]:
            a, b = b, a
        c, d = rng.choice(other)
        if oside[c]:
            c, d = d, c
        edges.remove(edge_key(a, b) if edge_key(a, b) in edges else (a, b))
        other.remove(edge_key(c, d))
        edges += [edge_key(x + n, y + n) for x, y in other]
        edges += [edge_key(a, d + n), edge_key(b, c + n)]
        n += m
    return GraphDocument(UndirectedGraph(n, sorted(edges)))
