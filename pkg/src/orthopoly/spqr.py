"""Triconnected components of 2-connected graphs and atomic decompositions.

:func:`build_spqr` computes the SPQR tree by naive splitting: repeatedly cut
a component at a separation pair (found as an articulation point of the
component minus one vertex), or cut parallel edges off as a bond, until
every piece is a bond, a triangle or 3-connected; then merge adjacent bonds
and adjacent polygons.  This is quadratic or worse, which is fine at the
sizes where the decomposition matters; a linear-time shortcut recognizes
3-connected cubic plane graphs directly.
"""

from __future__ import annotations

from collections import Counter, defaultdict
from dataclasses import dataclass, field

import networkx as nx

from .errors import NotBiconnected, PNodePresent
from .graph_core import UndirectedGraph, edge_key, trace_faces

# Skeleton edges are (u, v, tag): tag >= 0 is the index of a real edge of the
# input graph, tag < 0 encodes virtual edge number -1 - tag.
SkelEdge = tuple[int, int, int]


def _vid(tag: int) -> int:
    return -1 - tag


@dataclass
class SpqrNode:
    kind: str
    edges: list[SkelEdge]

    @property
    def vertices(self) -> list[int]:
        return sorted({x for u, v, _ in self.edges for x in (u, v)})

    @property
    def virtual_ids(self) -> list[int]:
        return [_vid(t) for _, _, t in self.edges if t < 0]

    def graph(self) -> nx.MultiGraph:
        mg = nx.MultiGraph()
        for u, v, t in self.edges:
            mg.add_edge(u, v, key=t, virtual=t < 0)
        return mg


@dataclass
class SpqrTree:
    nodes: list[SpqrNode]
    tree_edges: list[tuple[int, int, int]] = field(default_factory=list)

    def census(self) -> dict[str, int]:
        c = Counter(nd.kind for nd in self.nodes)
        return {k: c.get(k, 0) for k in ("S", "P", "R")}

    def neighbours(self, i: int) -> list[int]:
        out = []
        for a, b, _ in self.tree_edges:
            if a == i:
                out.append(b)
            elif b == i:
                out.append(a)
        return out


def _classify(edges: list[SkelEdge]) -> str:
    verts = {x for u, v, _ in edges for x in (u, v)}
    if len(verts) == 2:
        return "P"
    deg: Counter[int] = Counter()
    for u, v, _ in edges:
        deg[u] += 1
        deg[v] += 1
    if len(edges) == len(verts) and all(d == 2 for d in deg.values()):
        return "S"
    return "R"


def _split_once(edges: list[SkelEdge], new_tag: int) -> tuple[list[SkelEdge], list[SkelEdge]] | None:
    verts = sorted({x for u, v, _ in edges for x in (u, v)})
    if len(verts) <= 2:
        return None
    by_pair: dict[tuple[int, int], list[SkelEdge]] = defaultdict(list)
    for e in edges:
        by_pair[edge_key(e[0], e[1])].append(e)
    for (a, b), group in sorted(by_pair.items()):
        if len(group) >= 2:
            virt = (a, b, new_tag)
            rest = [e for e in edges if edge_key(e[0], e[1]) != (a, b)]
            return group + [virt], rest + [virt]
    if len(edges) <= 3:
        return None
    adj: dict[int, set[int]] = defaultdict(set)
    for u, v, _ in edges:
        adj[u].add(v)
        adj[v].add(u)
    for a in verts:
        h = nx.Graph()
        h.add_nodes_from(x for x in verts if x != a)
        h.add_edges_from((u, v) for u, v, _ in edges if a not in (u, v))
        arts = sorted(nx.articulation_points(h))
        if not arts:
            continue
        b = arts[0]
        h.remove_node(b)
        comp = min(nx.connected_components(h), key=min)
        side = [e for e in edges if e[0] in comp or e[1] in comp]
        rest = [e for e in edges if not (e[0] in comp or e[1] in comp)]
        virt = (a, b, new_tag)
        return side + [virt], rest + [virt]
    return None


def _faces_certify_triconnected(g: UndirectedGraph) -> bool:
    """Linear test for 3-connected cubic plane graphs; False means undecided."""
    if g.n < 4 or any(len(a) != 3 for a in g.adj):
        return False
    ok, emb = nx.check_planarity(g.to_networkx())
    if not ok:
        return False
    rotation = [list(reversed(list(emb.neighbors_cw_order(v)))) for v in range(g.n)]
    faces, dart_face = trace_faces(rotation)
    if any(len(set(f)) != len(f) for f in faces):
        return False
    seen = set()
    for u, v in g.edges:
        pair = tuple(sorted((dart_face[(u, v)], dart_face[(v, u)])))
        if pair in seen or pair[0] == pair[1]:
            return False
        seen.add(pair)
    return True


def build_spqr(g: UndirectedGraph) -> SpqrTree:
    """SPQR tree of a 2-connected simple graph (raises :class:`NotBiconnected`)."""
    if g.n < 3 or not nx.is_biconnected(g.to_networkx()):
        raise NotBiconnected("graph is not 2-connected")
    real = [(u, v, i) for i, (u, v) in enumerate(g.edges)]
    if _faces_certify_triconnected(g):
        return SpqrTree([SpqrNode("R", real)])
    work = [real]
    done: list[list[SkelEdge]] = []
    next_virtual = 0
    while work:
        comp = work.pop()
        res = _split_once(comp, -1 - next_virtual)
        if res is None:
            done.append(comp)
            continue
        next_virtual += 1
        work.extend(res)
    return _merge(done)


def _merge(pieces: list[list[SkelEdge]]) -> SpqrTree:
    kinds = [_classify(p) for p in pieces]
    owner: dict[int, list[int]] = defaultdict(list)
    for i, p in enumerate(pieces):
        for _, _, t in p:
            if t < 0:
                owner[t].append(i)
    parent = list(range(len(pieces)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    merged_tags = set()
    for t, (i, j) in owner.items():
        if kinds[i] == kinds[j] and kinds[i] in ("S", "P"):
            parent[find(i)] = find(j)
            merged_tags.add(t)
    groups: dict[int, list[SkelEdge]] = defaultdict(list)
    for i, p in enumerate(pieces):
        groups[find(i)].extend(e for e in p if e[2] not in merged_tags)
    roots = sorted(groups, key=lambda r: min(min(e[0], e[1]) for e in groups[r]))
    index = {r: k for k, r in enumerate(roots)}
    nodes = [SpqrNode(_classify(groups[r]), sorted(groups[r], key=lambda e: (e[2] < 0, e[2])))
             for r in roots]
    tree_edges = []
    for t, (i, j) in sorted(owner.items(), reverse=True):
        if t in merged_tags:
            continue
        a, b = index[find(i)], index[find(j)]
        tree_edges.append((min(a, b), max(a, b), _vid(t)))
    return SpqrTree(nodes, sorted(tree_edges))


def check_cubic_spqr(t: SpqrTree) -> bool:
    """Structural constraints that the SPQR tree of a cubic graph must satisfy."""
    kinds = [nd.kind for nd in t.nodes]
    for a, b, _ in t.tree_edges:
        if "S" not in (kinds[a], kinds[b]):
            return False
    for nd in t.nodes:
        if nd.kind == "P" and len(nd.edges) != 3:
            return False
        if nd.kind == "R":
            deg: Counter[int] = Counter()
            for u, v, _ in nd.edges:
                deg[u] += 1
                deg[v] += 1
            if any(d != 3 for d in deg.values()):
                return False
        if nd.kind == "S":
            order = _cycle_order(nd.edges)
            if order is None or len(order) % 2:
                return False
            flags = [tag < 0 for tag in order]
            if any(flags[i] == flags[(i + 1) % len(flags)] for i in range(len(flags))):
                return False
    # the real edges at every vertex, summed over nodes, must number three
    real_deg: Counter[int] = Counter()
    for nd in t.nodes:
        for u, v, tag in nd.edges:
            if tag >= 0:
                real_deg[u] += 1
                real_deg[v] += 1
    return all(d == 3 for d in real_deg.values())


def _cycle_order(edges: list[SkelEdge]) -> list[int] | None:
    """Tags of a cycle's edges in traversal order."""
    inc: dict[int, list[SkelEdge]] = defaultdict(list)
    for e in edges:
        inc[e[0]].append(e)
        inc[e[1]].append(e)
    if any(len(es) != 2 for es in inc.values()):
        return None
    start = edges[0]
    order = [start[2]]
    cur, prev = start[1], start
    while True:
        nxt = inc[cur][0] if inc[cur][1] is prev else inc[cur][1]
        if nxt is start:
            break
        order.append(nxt[2])
        cur = nxt[1] if nxt[0] == cur else nxt[0]
        prev = nxt
        if len(order) > len(edges):
            return None
    return order if len(order) == len(edges) else None


def has_p_node(t: SpqrTree) -> bool:
    return any(nd.kind == "P" for nd in t.nodes)


# ---------------------------------------------------------------------------
# Atomic decomposition
# ---------------------------------------------------------------------------


@dataclass
class SplitStep:
    """One split: ``atom`` is cut off through the edges ``(u, p)`` and ``(w, q)``.

    The atom gains the virtual edge ``(u, w)``; the remainder gains ``(p, q)``.
    """

    atom: list[int]
    u: int
    w: int
    p: int
    q: int
    atom_rotation: dict[int, list[int]] | None = None
    face_pq: list[int] | None = None
    face_qp: list[int] | None = None


@dataclass
class AtomicDecomposition:
    steps: list[SplitStep]
    core: list[int]
    core_rotation: dict[int, list[int]] | None = None

    @property
    def atoms(self) -> list[list[int]]:
        return [s.atom for s in self.steps] + [self.core]


def _replace(r: list[int], old: int, new: int) -> list[int]:
    return [new if x == old else x for x in r]


def _face_left(rot: dict[int, list[int]], a: int, b: int) -> list[int]:
    """Vertices of the face on the left of dart ``a -> b`` (same rule as :func:`trace_faces`)."""
    cycle = []
    x, y = a, b
    while True:
        cycle.append(x)
        ry = rot[y]
        z = ry[ry.index(x) - 1]
        x, y = y, z
        if (x, y) == (a, b):
            return cycle
        if len(cycle) > 4 * len(rot) + 4:
            raise RuntimeError("face tracing did not close")


def atomic_decomposition(
    t: SpqrTree, rotation: list[list[int]] | None = None
) -> AtomicDecomposition:
    """Peel R nodes off the tree, leaves first, down to a single core atom.

    With an embedding ``rotation`` each step also records the rotations of
    the atom (the virtual edge takes the place of the cut edges) and the two
    remainder faces on either side of the new edge ``(p, q)``.
    """
    if has_p_node(t):
        raise PNodePresent("the SPQR tree has a P node")
    r_nodes = [i for i, nd in enumerate(t.nodes) if nd.kind == "R"]
    if not r_nodes:
        raise PNodePresent("the SPQR tree has no R node")
    adj: dict[int, list[int]] = defaultdict(list)
    for a, b, _ in t.tree_edges:
        adj[a].append(b)
        adj[b].append(a)
    root = r_nodes[0]
    order: list[int] = []
    stack = [(root, -1, False)]
    while stack:
        node, par, expanded = stack.pop()
        if expanded:
            if t.nodes[node].kind == "R" and node != root:
                order.append(node)
            continue
        stack.append((node, par, True))
        for nb in sorted(adj[node], reverse=True):
            if nb != par:
                stack.append((nb, node, False))
    cur: dict[int, list[int]] = {}
    if rotation is not None:
        cur = {v: list(r) for v, r in enumerate(rotation)}
    else:
        nbrs: dict[int, list[int]] = defaultdict(list)
        for nd in t.nodes:
            for u, v, tag in nd.edges:
                if tag >= 0:
                    nbrs[u].append(v)
                    nbrs[v].append(u)
        cur = {v: sorted(ns) for v, ns in nbrs.items()}
    steps = []
    for node in order:
        atom = set(t.nodes[node].vertices)
        cut = sorted((a, b) for a in atom for b in cur[a] if b not in atom)
        if len(cut) != 2:
            raise NotBiconnected(f"atom {sorted(atom)} is attached by {len(cut)} edges")
        (u, p), (w, q) = cut
        arot = {a: list(cur[a]) for a in sorted(atom)}
        arot[u] = _replace(arot[u], p, w)
        arot[w] = _replace(arot[w], q, u)
        for a in atom:
            del cur[a]
        cur[p] = _replace(cur[p], u, q)
        cur[q] = _replace(cur[q], w, p)
        step = SplitStep(sorted(atom), u, w, p, q)
        if rotation is not None:
            step.atom_rotation = arot
            step.face_pq = _face_left(cur, p, q)
            step.face_qp = _face_left(cur, q, p)
        steps.append(step)
    core = sorted(cur)
    return AtomicDecomposition(steps, core, cur if rotation is not None else None)
