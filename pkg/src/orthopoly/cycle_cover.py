"""Rooted cycle covers of Eulerian triangulations.

A rooted cycle cover picks exactly one edge from every white triangle other
than the root so that every vertex off the root triangle ends up on exactly
one cycle.  Because every edge borders exactly one white triangle, this is the
same as asking for an edge choice in which every non-root vertex gets two
chosen edges and every root vertex none.

Three independent routes are provided:

* :func:`build_cycle_cover` simplifies a 4-connected triangulation step by
  step (split on a separating 4-cycle, remove two adjacent degree-4 vertices,
  contract a degree-4 vertex with two opposite neighbours) until only
  octahedra and copies of the 11-vertex indecomposable triangulation remain,
  then rebuilds the cover while undoing the steps;
* :func:`flow_cover` solves the degree-constrained choice exactly as a
  bipartite transportation problem (used for the 11-vertex base case and as
  a counted fallback);
* :func:`oracle_cycle_cover` is an exhaustive backtracking search for small
  inputs, sharing no code with the other two.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import lru_cache

import networkx as nx

from .corpus import canonical_code
from .euler_tri import PlaneTri, SeparatingTriangleTree, canonical_face, separating_tree
from .errors import (
    CoverInvalid,
    EvenParityTriangle,
    InternalInvariantViolation,
    NotApplicable,
    NotBaseCase,
    TooLarge,
)
from .graph_core import edge_key
from .instances import delta11_faces

Edge = tuple[int, int]
Tri = tuple[int, int, int]

HIGH_DEGREE = 36


@lru_cache(maxsize=1)
def _delta11_code() -> tuple[int, ...]:
    return canonical_code(delta11_faces())


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def cover_violations(
    rot: dict[int, list[int]],
    ecol: dict[Edge, int],
    white_sign: int,
    root_of: dict[int, Tri],
    cover: set[Edge],
) -> list[str]:
    """Problems with ``cover`` on a (possibly disconnected) collection of triangulations."""
    out: list[str] = []
    deg = {v: 0 for v in rot}
    for u, v in cover:
        if (u, v) not in ecol:
            out.append(f"cover edge {(u, v)} is not an edge")
            continue
        deg[u] += 1
        deg[v] += 1
    for v, d in deg.items():
        want = 0 if v in root_of else 2
        if d != want:
            out.append(f"vertex {v} has {d} cover edges, expected {want}")
    roots = {canonical_face(*t) for t in root_of.values()}
    for v, r in rot.items():
        k = len(r)
        for i, u in enumerate(r):
            w = r[i + 1] if i + 1 < k else r[0]
            if not (v < u and v < w):
                continue
            if (ecol[edge_key(u, w)] - ecol[edge_key(v, u)]) % 3 != white_sign:
                continue
            if (v, u, w) in roots:
                continue
            n = sum(edge_key(x, y) in cover for x, y in ((v, u), (u, w), (w, v)))
            if n != 1:
                out.append(f"white triangle {(v, u, w)} has {n} cover edges")
    return out


def validate_cover(tri: PlaneTri, cover: set[Edge]) -> list[str]:
    """Empty list iff ``cover`` is a rooted cycle cover of ``tri``."""
    root_of = {v: tri.root for v in tri.root}
    return cover_violations(tri.rot, tri.ecol, tri.root_sign, root_of, cover)


def cover_cycles(cover: set[Edge]) -> list[list[int]]:
    """Split a set of degree-2 edges into vertex cycles."""
    adj: dict[int, list[int]] = {}
    for u, v in cover:
        adj.setdefault(u, []).append(v)
        adj.setdefault(v, []).append(u)
    seen: set[int] = set()
    cycles = []
    for s in sorted(adj):
        if s in seen:
            continue
        cyc = [s]
        seen.add(s)
        prev, cur = s, adj[s][0]
        while cur != s:
            cyc.append(cur)
            seen.add(cur)
            a, b = adj[cur]
            prev, cur = cur, (b if a == prev else a)
        cycles.append(cyc)
    return cycles


# ---------------------------------------------------------------------------
# Exact solvers
# ---------------------------------------------------------------------------


def _inner_white_faces(tri: PlaneTri) -> list[Tri]:
    root = canonical_face(*tri.root)
    return [f for f in tri.faces() if tri.is_white(*f) and f != root]


def flow_cover(tri: PlaneTri) -> set[Edge] | None:
    """Exact rooted cycle cover by max-flow, or ``None`` when none exists.

    Each inner white triangle gives up one corner (its chosen edge is the
    opposite side); a vertex of degree ``d`` must give up ``d/2 - 2`` corners,
    or all ``d/2 - 1`` of its inner white corners when it lies on the root.
    """
    root = set(tri.root)
    faces = _inner_white_faces(tri)
    g = nx.DiGraph()
    for i, f in enumerate(faces):
        g.add_edge("s", ("f", i), capacity=1)
        for v in f:
            g.add_edge(("f", i), ("v", v), capacity=1)
    for v, r in tri.rot.items():
        need = len(r) // 2 - (1 if v in root else 2)
        if need < 0:
            return None
        if need:
            g.add_edge(("v", v), "t", capacity=need)
    if "t" not in g:
        return set() if not faces else None
    value, flow = nx.maximum_flow(g, "s", "t")
    if value != len(faces):
        return None
    cover = set()
    for i, f in enumerate(faces):
        for j, v in enumerate(f):
            if flow[("f", i)].get(("v", v), 0):
                cover.add(edge_key(f[(j + 1) % 3], f[(j + 2) % 3]))
    return cover


def oracle_cycle_cover(tri: PlaneTri, bound: int = 14) -> set[Edge] | None:
    """Exhaustive search for a rooted cycle cover (independent reference)."""
    if len(tri.rot) > bound:
        raise TooLarge(f"{len(tri.rot)} vertices exceed the oracle bound {bound}")
    root = set(tri.root)
    faces = _inner_white_faces(tri)
    target = {v: (0 if v in root else 2) for v in tri.rot}
    remaining = {v: 0 for v in tri.rot}
    for f in faces:
        for v in f:
            remaining[v] += 1
    # visit triangles so that consecutive ones share vertices
    order: list[Tri] = []
    pending = set(range(len(faces)))
    by_vertex: dict[int, list[int]] = {}
    for i, f in enumerate(faces):
        for v in f:
            by_vertex.setdefault(v, []).append(i)
    while pending:
        start = min(pending)
        queue = deque([start])
        pending.discard(start)
        while queue:
            i = queue.popleft()
            order.append(faces[i])
            for v in faces[i]:
                for j in by_vertex[v]:
                    if j in pending:
                        pending.discard(j)
                        queue.append(j)
    deg = {v: 0 for v in tri.rot}
    chosen: list[Edge] = []

    def feasible(f: Tri) -> bool:
        return all(deg[v] <= target[v] <= deg[v] + remaining[v] for v in f)

    def search(i: int) -> bool:
        if i == len(order):
            return all(deg[v] == target[v] for v in deg)
        f = order[i]
        for v in f:
            remaining[v] -= 1
        for j in range(3):
            x, y = f[j], f[(j + 1) % 3]
            if deg[x] < target[x] and deg[y] < target[y]:
                deg[x] += 1
                deg[y] += 1
                chosen.append(edge_key(x, y))
                if feasible(f) and search(i + 1):
                    return True
                chosen.pop()
                deg[x] -= 1
                deg[y] -= 1
        for v in f:
            remaining[v] += 1
        return False

    if any(remaining[v] < target[v] for v in tri.rot):
        return None
    return set(chosen) if search(0) else None


# ---------------------------------------------------------------------------
# Cover bookkeeping while unwinding
# ---------------------------------------------------------------------------


class CoverSet:
    """Edge set with per-vertex incidence, used while lifting covers."""

    def __init__(self) -> None:
        self.edges: set[Edge] = set()
        self.at: dict[int, set[int]] = {}

    def add(self, u: int, v: int) -> None:
        e = edge_key(u, v)
        if e in self.edges:
            raise CoverInvalid(f"edge {e} already in cover")
        self.edges.add(e)
        self.at.setdefault(u, set()).add(v)
        self.at.setdefault(v, set()).add(u)

    def remove(self, u: int, v: int) -> None:
        e = edge_key(u, v)
        if e not in self.edges:
            raise CoverInvalid(f"edge {e} expected in cover")
        self.edges.discard(e)
        self.at[u].discard(v)
        self.at[v].discard(u)

    def has(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.edges

    def mates(self, v: int) -> list[int]:
        return sorted(self.at.get(v, ()))

    def rename(self, old: int, new: int) -> None:
        for w in self.mates(old):
            self.remove(old, w)
            self.add(new, w)


# ---------------------------------------------------------------------------
# Simplification steps
# ---------------------------------------------------------------------------


@dataclass
class SimplificationStep:
    """One decomposition step plus everything needed to lift a cover through it."""

    rule: str
    mark: int
    feature: tuple[int, ...]
    created: tuple[int, ...] = ()
    data: dict = field(default_factory=dict)

    def lift(self, cover: CoverSet) -> None:
        getattr(self, "_lift_" + self.rule)(cover)

    # -- base cases --------------------------------------------------------

    def _lift_base6(self, cover: CoverSet) -> None:
        for u, v in self.data["cover"]:
            cover.add(u, v)

    _lift_base11 = _lift_base6
    _lift_flow = _lift_base6

    # -- Rule III: p, q removed, edge tu added -----------------------------

    def _lift_III(self, cover: CoverSet) -> None:
        p, q, t, u = self.data["p"], self.data["q"], self.data["t"], self.data["u"]
        w = self.data["w"]
        if cover.has(t, u):
            cover.remove(t, u)
            path = (t, p, q, u)
        elif cover.has(t, w):
            cover.remove(t, w)
            path = (t, p, q, w)
        elif cover.has(w, u):
            cover.remove(w, u)
            path = (w, p, q, u)
        else:
            raise CoverInvalid(f"white triangle {(t, u, w)} has no cover edge")
        for x, y in zip(path, path[1:]):
            cover.add(x, y)

    # -- Rule IV: b, p, d contracted into g --------------------------------

    def _lift_IV(self, cover: CoverSet) -> None:
        d_ = self.data
        g, p, b, d = d_["g"], d_["p"], d_["b"], d_["d"]
        mates = cover.mates(g)
        if len(mates) != 2:
            raise CoverInvalid(f"contracted vertex {g} is not covered")
        for n in mates:
            cover.remove(g, n)
        side = [d_["maps_to"][n] for n in mates]
        for n, s in zip(mates, side):
            cover.add(n, s)
        if set(side) == {b, d}:
            cover.add(b, p)
            cover.add(p, d)
        elif side == [d, d]:
            z, e = d_["z_d"], d_["e_d"]
            cover.remove(z, e)
            for x, y in ((z, p), (p, b), (b, e)):
                cover.add(x, y)
        else:
            z, e = d_["z_b"], d_["e_b"]
            cover.remove(z, e)
            for x, y in ((z, p), (p, d), (d, e)):
                cover.add(x, y)

    # -- Rules I and II: split on a separating 4-cycle ---------------------

    def _restore_copies(self, cover: CoverSet) -> None:
        for copy, orig in self.data["copies"].items():
            cover.rename(copy, orig)

    def _lift_I(self, cover: CoverSet) -> None:
        d_ = self.data
        a, b, c, d = d_["cycle"]
        n = d_["in_name"]
        g = d_["gadget_out"][0]
        back = d_["to_orig"]
        mates = [back.get(m, m) for m in cover.mates(g)]
        for m in cover.mates(g):
            cover.remove(g, m)
        xs = [m for m in mates if m in (a, b)]
        ys = [m for m in mates if m in (c, d)]
        if len(xs) != 1 or len(ys) != 1:
            raise CoverInvalid(f"hyper-vertex cycle enters through {mates}")
        x, y = xs[0], ys[0]
        p, q = d_["p"], d_["q"]
        for e in ((p, n[b]), (n[b], n[c]), (n[c], q)):
            if not cover.has(*e):
                raise CoverInvalid(f"inside cover misses edge {e}")
        # inside edges go first: the same cycle edge may also be in the outside cover
        cover.remove(n[b], n[c])
        if x == a:
            cover.remove(p, n[b])
        if y == d:
            cover.remove(n[c], q)
        self._restore_copies(cover)
        if x == a:
            cover.add(a, p)
        if y == d:
            cover.add(d, q)

    def _lift_II(self, cover: CoverSet) -> None:
        d_ = self.data
        a, b, c, d = d_["cycle"]
        n = d_["in_name"]
        g1, g2 = d_["gadget_out"]
        back = d_["to_orig"]
        if not cover.has(g1, g2):
            raise CoverInvalid("hyper-vertex pair not joined in cover")
        xs = [back.get(m, m) for m in cover.mates(g1) if m != g2]
        ys = [back.get(m, m) for m in cover.mates(g2) if m != g1]
        for g in (g1, g2):
            for m in cover.mates(g):
                cover.remove(g, m)
        if len(xs) != 1 or len(ys) != 1 or xs[0] not in (a, d) or ys[0] not in (c, d):
            raise CoverInvalid(f"hyper-vertex cycle enters through {xs + ys}")
        x, y = xs[0], ys[0]
        p, q = d_["p"], d_["q"]
        for e in ((p, n[a]), (n[a], n[b]), (n[b], n[c]), (n[c], q)):
            if not cover.has(*e):
                raise CoverInvalid(f"inside cover misses edge {e}")
        cover.remove(n[a], n[b])
        cover.remove(n[b], n[c])
        if x == d:
            cover.remove(p, n[a])
        if y == d:
            cover.remove(n[c], q)
        self._restore_copies(cover)
        if x == d:
            cover.add(d, p)
        if y == d:
            cover.add(q, d)


@dataclass
class DecompositionStats:
    steps: dict[str, int] = field(default_factory=dict)
    rescans: int = 0
    flow_fallbacks: int = 0
    lift_fallbacks: int = 0
    max_live_vertices: int = 0

    def count(self, rule: str) -> None:
        self.steps[rule] = self.steps.get(rule, 0) + 1


def _rotate_to(r: list[int], first: int) -> list[int]:
    i = r.index(first)
    return r[i:] + r[:i]


def _replace(r: list[int], old: int, new: list[int]) -> list[int]:
    i = r.index(old)
    return r[:i] + new + r[i + 1 :]


def _replace_run(r: list[int], run: list[int], new: int) -> list[int]:
    """Replace the cyclically consecutive ``run`` in ``r`` by ``new``."""
    k = len(r)
    i = r.index(run[0])
    if any(r[(i + j) % k] != run[j] for j in range(len(run))):
        raise InternalInvariantViolation(f"{run} is not consecutive in {r}")
    rr = r[i:] + r[:i]
    return [new] + rr[len(run) :]


def _gadget_I(cyc: tuple[int, ...], g: int) -> list[Tri]:
    a, b, c, d = cyc
    return [(a, b, g), (b, c, g), (c, d, g), (d, a, g)]


def _gadget_II(cyc: tuple[int, ...], g1: int, g2: int) -> list[Tri]:
    a, b, c, d = cyc
    return [(a, b, g1), (b, g2, g1), (b, c, g2), (c, d, g2), (g2, d, g1), (d, a, g1)]


class Decomposer:
    """Mutable forest of 4-connected Eulerian triangulations being simplified.

    Every mutation is journaled so that :meth:`undo` restores the previous
    state exactly.  Vertex adjacency is answered from the edge-color map,
    which doubles as the hashed adjacency dictionary.
    """

    def __init__(self, tri: PlaneTri) -> None:
        self.rot: dict[int, list[int]] = {v: list(r) for v, r in tri.rot.items()}
        self.ecol: dict[Edge, int] = dict(tri.ecol)
        self.white = tri.root_sign
        self.root_of: dict[int, Tri] = {v: tuple(tri.root) for v in tri.root}  # type: ignore[misc]
        self.next_id = max(self.rot) + 1
        self.journal: list[tuple[int, object, object]] = []

    # -- journaled primitives ---------------------------------------------

    def _set_rot(self, v: int, r: list[int]) -> None:
        self.journal.append((0, v, self.rot.get(v)))
        self.rot[v] = r

    def _drop_vertex(self, v: int) -> None:
        self.journal.append((0, v, self.rot.pop(v)))

    def _set_col(self, u: int, v: int, c: int) -> None:
        e = edge_key(u, v)
        self.journal.append((1, e, self.ecol.get(e)))
        self.ecol[e] = c

    def _drop_col(self, u: int, v: int) -> None:
        e = edge_key(u, v)
        self.journal.append((1, e, self.ecol.pop(e)))

    def _set_root(self, v: int, tri: Tri | None) -> None:
        self.journal.append((2, v, self.root_of.get(v)))
        if tri is None:
            self.root_of.pop(v, None)
        else:
            self.root_of[v] = tri

    def _fresh(self) -> int:
        v = self.next_id
        self.next_id += 1
        return v

    def undo(self, step: SimplificationStep) -> None:
        """Roll back ``step`` (which must be the most recent one still applied)."""
        stores = (self.rot, self.ecol, self.root_of)
        while len(self.journal) > step.mark:
            kind, key, old = self.journal.pop()
            d = stores[kind]
            if old is None:
                d.pop(key, None)  # type: ignore[call-overload]
            else:
                d[key] = old  # type: ignore[index]

    # -- queries ------------------------------------------------------------

    def deg(self, v: int) -> int:
        return len(self.rot[v])

    def adjacent(self, u: int, v: int) -> bool:
        return edge_key(u, v) in self.ecol

    def col(self, u: int, v: int) -> int:
        return self.ecol[edge_key(u, v)]

    def third(self, a: int, b: int) -> int:
        r = self.rot[a]
        i = r.index(b) + 1
        return r[i] if i < len(r) else r[0]

    def is_white(self, a: int, b: int, c: int) -> bool:
        return (self.col(b, c) - self.col(a, b)) % 3 == self.white

    def arc(self, v: int, start: int, stop: int) -> list[int]:
        r = self.rot[v]
        i, j = r.index(start), r.index(stop)
        return r[i + 1 : j] if i < j else r[i + 1 :] + r[:j]

    def capped_degree(self, v: int) -> int:
        return min(HIGH_DEGREE, len(self.rot[v]))

    def component(self, v: int, limit: int | None = None) -> set[int] | None:
        """Vertices of ``v``'s component, or ``None`` once more than ``limit`` are seen."""
        seen = {v}
        queue = deque([v])
        while queue:
            x = queue.popleft()
            for w in self.rot[x]:
                if w not in seen:
                    seen.add(w)
                    if limit is not None and len(seen) > limit:
                        return None
                    queue.append(w)
        return seen

    def as_tri(self, verts: set[int]) -> PlaneTri:
        root = next(self.root_of[v] for v in verts if v in self.root_of)
        rot = {v: list(self.rot[v]) for v in verts}
        ecol = {(v, w): self.ecol[(v, w)] for v in verts for w in rot[v] if v < w}
        return PlaneTri(rot, ecol, root)

    def violations(self, cover: set[Edge]) -> list[str]:
        return cover_violations(self.rot, self.ecol, self.white, self.root_of, cover)

    # -- good vertices --------------------------------------------------------

    def classify(self, v: int) -> str:
        """``good``, ``bad`` or ``not-degree-4`` from capped degrees around ``v``."""
        if v not in self.rot or len(self.rot[v]) != 4:
            return "not-degree-4"
        if v in self.root_of:
            return "bad"
        rot = self.rot
        r = rot[v]
        hd = [len(rot[w]) >= HIGH_DEGREE for w in r]
        if (hd[0] and hd[1]) or (hd[1] and hd[2]) or (hd[2] and hd[3]) or (hd[3] and hd[0]):
            return "bad"
        for i, q in enumerate(r):
            rq = rot[q]
            if len(rq) != 4:
                continue
            t = r[(i + 2) % 4]
            u = rq[(rq.index(v) + 2) % 4]
            if len(rot[t]) >= HIGH_DEGREE and len(rot[u]) >= HIGH_DEGREE:
                return "bad"
        return "good"

    # -- base cases -----------------------------------------------------------

    def try_base(self, p: int) -> SimplificationStep | None:
        comp = self.component(p, limit=11)
        if comp is None or len(comp) not in (6, 11):
            return None
        tri = self.as_tri(comp)
        if len(comp) == 6:
            rule = "base6"
            cover = cover_base_case(tri)
        else:
            if _rooted_labeling(tri)[0] not in _BASE11_COVERS and canonical_code(tri.faces()) != _delta11_code():
                return None
            rule = "base11"
            cover = cover_base_case(tri)
        mark = len(self.journal)
        for v in comp:
            for w in self.rot[v]:
                if v < w:
                    self._drop_col(v, w)
        for v in comp:
            self._drop_vertex(v)
            if v in self.root_of:
                self._set_root(v, None)
        return SimplificationStep(rule, mark, tuple(sorted(comp)), data={"cover": sorted(cover)})

    def remove_by_flow(self, comp: set[int]) -> SimplificationStep:
        tri = self.as_tri(comp)
        cover = flow_cover(tri)
        if cover is None:
            raise InternalInvariantViolation("component without rooted cycle cover")
        mark = len(self.journal)
        for v in comp:
            for w in self.rot[v]:
                if v < w:
                    self._drop_col(v, w)
        for v in comp:
            self._drop_vertex(v)
            if v in self.root_of:
                self._set_root(v, None)
        return SimplificationStep("flow", mark, tuple(sorted(comp)), data={"cover": sorted(cover)})

    # -- Rule III ---------------------------------------------------------------

    def try_rule3(self, p: int, q: int) -> SimplificationStep | list[tuple[int, ...]]:
        if q in self.root_of or p in self.root_of or self.deg(q) != 4:
            return []
        _, r, t, s = _rotate_to(self.rot[p], q)
        rq = _rotate_to(self.rot[q], p)
        if rq[1] != s or rq[3] != r:
            raise InternalInvariantViolation("inconsistent rotations around an edge")
        u = rq[2]
        if self.deg(r) <= 4 or self.deg(s) <= 4 or t == u or self.adjacent(t, u):
            return []
        lo, hi = (t, u) if self.deg(t) <= self.deg(u) else (u, t)
        blockers = [v for v in self.rot[lo] if v not in (r, s) and self.adjacent(v, hi)]
        if blockers:
            out: list[tuple[int, ...]] = []
            for v in blockers:
                out += [(t, r, u, v), (t, s, u, v)]
            return out
        mark = len(self.journal)
        self._set_rot(t, _replace(self.rot[t], p, [u]))
        self._set_rot(u, _replace(self.rot[u], q, [t]))
        for x in (r, s):
            self._set_rot(x, [w for w in self.rot[x] if w != p and w != q])
        c = 3 - self.col(t, r) - self.col(r, u)
        for x, nb in ((p, self.rot[p]), (q, self.rot[q])):
            for w in nb:
                if self.adjacent(x, w):
                    self._drop_col(x, w)
        self._drop_vertex(p)
        self._drop_vertex(q)
        self._set_col(t, u, c)
        if {self.col(t, s), self.col(s, u), c} != {0, 1, 2}:
            raise InternalInvariantViolation("Rule III produced a non-rainbow face")
        w = r if self.is_white(t, u, r) else s
        return SimplificationStep(
            "III", mark, (p, q), (), {"p": p, "q": q, "r": r, "s": s, "t": t, "u": u, "w": w}
        )

    # -- Rule IV ---------------------------------------------------------------

    def try_rule4(self, p: int, a: int, b: int, c: int, d: int) -> SimplificationStep | list[tuple[int, ...]]:
        """Contract ``b``-``p``-``d`` where ``rot(p)`` is ``a, b, c, d``."""
        if any(self.deg(x) <= 4 for x in (a, b, c, d)):
            return []
        if p in self.root_of or b in self.root_of or d in self.root_of:
            return []
        if self.adjacent(b, d):
            return []
        skip = {a, c, p}
        lo, hi = (b, d) if self.deg(b) <= self.deg(d) else (d, b)
        common = [x for x in self.rot[lo] if x not in skip and self.adjacent(x, hi)]
        if common:
            return [(b, p, d, x) for x in common]
        witnesses: list[tuple[int, ...]] = []
        blocked = False
        for x in self.rot[b]:
            if x in skip:
                continue
            for y in self.rot[d]:
                if y in skip or y == x or not self.adjacent(x, y):
                    continue
                blocked = True
                # 5-cycle b-p-d-y-x; look for a chord from a or c
                for w in (a, c):
                    if self.adjacent(w, x):
                        witnesses.append((w, x, y, d))
                    if self.adjacent(w, y):
                        witnesses.append((w, y, x, b))
        if blocked:
            return witnesses
        rb = _rotate_to(self.rot[b], c)
        rd = _rotate_to(self.rot[d], a)
        if rb[1] != p or rb[2] != a or rd[1] != p or rd[2] != c:
            raise InternalInvariantViolation("unexpected rotation around a degree-4 vertex")
        bs, ds = rb[3:], rd[3:]
        white_pab = self.is_white(p, a, b)
        # which original vertex a cover edge at g stands for
        maps_to = {x: b for x in bs}
        maps_to.update({x: d for x in ds})
        maps_to[a] = d if white_pab else b
        maps_to[c] = b if white_pab else d
        if white_pab:
            z_b, z_d = a, c
        else:
            z_b, z_d = c, a
        e_d = self._other_apex(z_d, b, p)
        e_b = self._other_apex(z_b, d, p)
        colors = {a: self.col(a, b), c: self.col(c, b)}
        colors.update({x: self.col(b, x) for x in bs})
        colors.update({x: self.col(d, x) for x in ds})
        mark = len(self.journal)
        g = self._fresh()
        self._set_rot(a, _replace_run(self.rot[a], [b, p, d], g))
        self._set_rot(c, _replace_run(self.rot[c], [d, p, b], g))
        for x in bs:
            self._set_rot(x, _replace(self.rot[x], b, [g]))
        for x in ds:
            self._set_rot(x, _replace(self.rot[x], d, [g]))
        for x in (p, b, d):
            for w in self.rot[x]:
                if self.adjacent(x, w):
                    self._drop_col(x, w)
        for x in (p, b, d):
            self._drop_vertex(x)
        self._set_rot(g, [a] + bs + [c] + ds)
        for x, col in colors.items():
            self._set_col(g, x, col)
        data = {
            "p": p, "a": a, "b": b, "c": c, "d": d, "g": g, "maps_to": maps_to,
            "z_b": z_b, "z_d": z_d, "e_b": e_b, "e_d": e_d,
        }
        return SimplificationStep("IV", mark, (p, b, d), (g,), data)

    def _other_apex(self, x: int, y: int, not_this: int) -> int:
        l, r = self.third(x, y), self.third(y, x)
        return r if l == not_this else l

    # -- Rules I and II ---------------------------------------------------------

    def _sides(self, cyc: tuple[int, ...]) -> tuple[list[set[int]], int] | None:
        """Lockstep search of both sides of a 4-cycle.

        Returns the explored sides (left first) and the index of a side that
        was explored completely, or ``None`` if some side has fewer than three
        vertices.
        """
        blocked = set(cyc)
        seeds: list[set[int]] = [set(), set()]
        for i, v in enumerate(cyc):
            nxt, prv = cyc[(i + 1) % 4], cyc[i - 1]
            seeds[0].update(self.arc(v, nxt, prv))
            seeds[1].update(self.arc(v, prv, nxt))
        if seeds[0] & blocked or seeds[1] & blocked:
            return None
        seen = [set(s) for s in seeds]
        queues = [deque(sorted(s)) for s in seeds]
        done = -1
        while done < 0:
            for k in (0, 1):
                if not queues[k]:
                    done = k
                    break
                x = queues[k].popleft()
                for w in self.rot[x]:
                    if w not in blocked and w not in seen[k]:
                        seen[k].add(w)
                        queues[k].append(w)
        if len(seen[done]) < 3:
            return None
        other = 1 - done
        while len(seen[other]) < 3 and queues[other]:
            x = queues[other].popleft()
            for w in self.rot[x]:
                if w not in blocked and w not in seen[other]:
                    seen[other].add(w)
                    queues[other].append(w)
        if len(seen[other]) < 3:
            return None
        return seen, done

    def try_split(self, cyc: tuple[int, ...]) -> SimplificationStep | None:
        if len(set(cyc)) != 4:
            return None
        for i in range(4):
            if not self.adjacent(cyc[i], cyc[(i + 1) % 4]):
                return None
        if self.adjacent(cyc[0], cyc[2]) or self.adjacent(cyc[1], cyc[3]):
            return None
        res = self._sides(cyc)
        if res is None:
            return None
        seen, done = res
        root_in_done = any(v in self.root_of for v in seen[done])
        inside = 1 - done if root_in_done else done
        if inside == 1:
            cyc = (cyc[0], cyc[3], cyc[2], cyc[1])
            seen = [seen[1], seen[0]]
            done = 1 - done
        cols = [self.col(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
        if len(set(cols)) == 1:
            rule = "I"
            # label so that the inside triangle on edge d-a is blue
            for k in range(4):
                cand = cyc[k:] + cyc[:k]
                if not self.is_white(cand[3], cand[0], self.third(cand[3], cand[0])):
                    break
            else:
                raise InternalInvariantViolation("monochromatic 4-cycle without blue inside face")
        else:
            rule = "II"
            for k in range(4):
                cand = cyc[k:] + cyc[:k]
                c2, c3, c0 = cand[2], cand[3], cand[0]
                if self.col(c2, c3) != self.col(c3, c0) and self.is_white(c2, c3, self.third(c2, c3)):
                    break
            else:
                raise InternalInvariantViolation("bichromatic 4-cycle without even white corner")
        return self._split(rule, tuple(cand), copies_inside=(done == 0))

    def _split(self, rule: str, cyc: tuple[int, ...], copies_inside: bool) -> SimplificationStep:
        a, b, c, d = cyc
        inside_arcs = [self.arc(cyc[i], cyc[(i + 1) % 4], cyc[i - 1]) for i in range(4)]
        outside_arcs = [self.arc(cyc[i], cyc[i - 1], cyc[(i + 1) % 4]) for i in range(4)]
        edge_cols = [self.col(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
        if rule == "I":
            p, q = self.third(a, b), self.third(c, d)
        else:
            p, q = self.third(d, a), self.third(c, d)

        def seeds(order: tuple[int, ...], names: tuple[int, ...], gadget: list[Tri]) -> dict[Edge, int]:
            """Colors of gadget edges copied from the faces the gadget replaces."""
            known: dict[Edge, int] = {}
            for i in range(4):
                x, y = order[i], order[(i + 1) % 4]
                z = self.third(x, y)
                nx_, ny = names[i], names[(i + 1) % 4]
                known[edge_key(nx_, ny)] = self.col(x, y)
                for f in gadget:
                    if nx_ in f and ny in f and f[(f.index(nx_) + 1) % 3] == ny:
                        apex = f[(f.index(nx_) + 2) % 3]
                        for key, colr in ((edge_key(ny, apex), self.col(y, z)), (edge_key(apex, nx_), self.col(z, x))):
                            if known.get(key, colr) != colr:
                                raise InternalInvariantViolation("gadget edge colors disagree")
                            known[key] = colr
            return _complete_colors(gadget, known)

        copies = {v: self._fresh() for v in cyc}
        to_orig = {cp: v for v, cp in copies.items()}
        name_in = tuple(copies[v] if copies_inside else v for v in cyc)
        name_out = tuple(v if copies_inside else copies[v] for v in cyc)
        if rule == "I":
            g_out = (self._fresh(),)
            g_in = (self._fresh(),)
            out_faces = _gadget_I(name_out, *g_out)
            rev = (name_in[0], name_in[3], name_in[2], name_in[1])
            in_faces = _gadget_I(rev, *g_in)
            in_root = (name_in[0], name_in[3], g_in[0])
        else:
            g_out = (self._fresh(), self._fresh())
            g_in = (self._fresh(), self._fresh())
            out_faces = _gadget_II(name_out, *g_out)
            rev = (name_in[0], name_in[3], name_in[2], name_in[1])
            in_faces = _gadget_II(rev, *g_in)
            in_root = (name_in[3], g_in[1], g_in[0])
        out_cols = seeds(cyc, name_out, out_faces)
        rev_orig = (a, d, c, b)
        in_cols = seeds(rev_orig, rev, in_faces)
        out_fan = _fans(out_faces)
        in_fan = _fans(in_faces)

        mark = len(self.journal)
        old_root = None
        for v in cyc:
            if v in self.root_of:
                old_root = self.root_of[v]
        # neighbours on the copied side now see the copies
        moved = inside_arcs if copies_inside else outside_arcs
        for i, v in enumerate(cyc):
            for w in moved[i]:
                self._set_rot(w, _replace(self.rot[w], v, [copies[v]]))
                colr = self.col(v, w)
                self._drop_col(v, w)
                self._set_col(copies[v], w, colr)
        for i in range(4):
            nxt, prv = (i + 1) % 4, i - 1
            # outside component keeps the outside arc, gadget inside
            gin = _fan_between(out_fan[name_out[i]], name_out[nxt], name_out[prv])
            self._set_rot(name_out[i], [name_out[nxt]] + gin + [name_out[prv]] + outside_arcs[i])
            # inside component keeps the inside arc, gadget outside
            gout = _fan_between(in_fan[name_in[i]], name_in[prv], name_in[nxt])
            self._set_rot(name_in[i], [name_in[nxt]] + inside_arcs[i] + [name_in[prv]] + gout)
            self._set_col(copies[cyc[i]], copies[cyc[nxt]], edge_cols[i])
        for g in g_out:
            self._set_rot(g, out_fan[g].cycle())
        for h in g_in:
            self._set_rot(h, in_fan[h].cycle())
        for (u, v), colr in list(out_cols.items()) + list(in_cols.items()):
            if not self.adjacent(u, v):
                self._set_col(u, v, colr)
            elif self.col(u, v) != colr:
                raise InternalInvariantViolation("split changed a cycle edge color")
        # roots: the outside component keeps its root (renamed if copied)
        if old_root is not None and not copies_inside:
            new_root = tuple(copies.get(v, v) for v in old_root)
            for v in old_root:
                if v in copies:
                    self._set_root(v, None)
            for v in new_root:
                self._set_root(v, new_root)  # type: ignore[arg-type]
            for v in old_root:
                if v not in copies:
                    self._set_root(v, new_root)  # type: ignore[arg-type]
        for v in in_root:
            self._set_root(v, in_root)
        data = {
            "cycle": cyc, "copies": to_orig, "to_orig": to_orig,
            "gadget_out": g_out, "gadget_in": g_in, "p": p, "q": q,
            "copies_inside": copies_inside, "in_name": dict(zip(cyc, name_in)),
        }
        return SimplificationStep(rule, mark, cyc, tuple(copies.values()) + g_out + g_in, data)

    # -- search -------------------------------------------------------------

    def simplify(self, p: int) -> SimplificationStep | None:
        """Find and apply a step seeded at degree-4 vertex ``p`` (``None`` if none found)."""
        if p not in self.rot or self.deg(p) != 4 or p in self.root_of:
            return None
        step = self.try_base(p)
        if step is not None:
            return step
        nbrs = self.rot[p]
        witnesses: list[tuple[int, ...]] = []
        for q in nbrs:
            if self.deg(q) == 4:
                res = self.try_rule3(p, q)
                if isinstance(res, SimplificationStep):
                    return res
                witnesses += res
        if all(self.deg(x) > 4 for x in nbrs):
            a, b, c, d = nbrs
            pairs = [((a, b, c, d), b, d), ((d, a, b, c), a, c)]
            pairs.sort(key=lambda t: self.deg(t[1]) + self.deg(t[2]))
            for order, _, _ in pairs:
                res = self.try_rule4(p, *order)
                if isinstance(res, SimplificationStep):
                    return res
                witnesses += res
        for cyc in witnesses:
            step = self.try_split(cyc)
            if step is not None:
                return step
        return None

    def touched(self, step: SimplificationStep) -> set[int]:
        """Live vertices whose neighbourhood changed (candidates for re-classification)."""
        out: set[int] = set()
        for v in step.feature + step.created + tuple(step.data.get("cycle", ())):
            if v in self.rot:
                out.add(v)
                out.update(self.rot[v])
        for key in ("r", "s", "t", "u", "a", "c", "g"):
            v = step.data.get(key)
            if isinstance(v, int) and v in self.rot:
                out.add(v)
                out.update(self.rot[v])
        return out


class _Fan:
    def __init__(self) -> None:
        self.succ: dict[int, int] = {}

    def cycle(self) -> list[int]:
        start = min(self.succ)
        out = [start]
        while self.succ[out[-1]] != start:
            out.append(self.succ[out[-1]])
        return out


def _fans(faces: list[Tri]) -> dict[int, _Fan]:
    fans: dict[int, _Fan] = {}
    for a, b, c in faces:
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            fans.setdefault(x, _Fan()).succ[y] = z
    return fans


def _fan_between(fan: _Fan, start: int, stop: int) -> list[int]:
    out = []
    w = fan.succ[start]
    while w != stop:
        out.append(w)
        w = fan.succ[w]
    return out


def _complete_colors(faces: list[Tri], known: dict[Edge, int]) -> dict[Edge, int]:
    """Propagate rainbow colors through ``faces`` until every edge is colored."""
    known = dict(known)
    changed = True
    while changed:
        changed = False
        for a, b, c in faces:
            es = [edge_key(a, b), edge_key(b, c), edge_key(c, a)]
            have = [e for e in es if e in known]
            if len(have) == 2:
                miss = next(e for e in es if e not in known)
                known[miss] = 3 - known[have[0]] - known[have[1]]
                changed = True
    for a, b, c in faces:
        es = [edge_key(a, b), edge_key(b, c), edge_key(c, a)]
        if any(e not in known for e in es) or {known[e] for e in es} != {0, 1, 2}:
            raise InternalInvariantViolation(f"gadget face {(a, b, c)} is not rainbow")
    return known


# ---------------------------------------------------------------------------
# Base cases and driver
# ---------------------------------------------------------------------------


# Flow covers of the 11-vertex base graph, keyed by the rooted isomorphism
# class and stored in canonical labels; the graph has only a few root orbits.
_BASE11_COVERS: dict[tuple[int, ...], frozenset[Edge]] = {}


def _rooted_labeling(tri: PlaneTri) -> tuple[tuple[int, ...], dict[int, int]]:
    """Breadth-first code and labeling of ``tri`` started on its root triangle."""
    a, b, c = tri.root
    best: tuple[tuple[int, ...], dict[int, int]] | None = None
    for x, y in ((a, b), (b, c), (c, a)):
        label = {x: 0}
        ref = {x: y}
        order = [x]
        code: list[int] = []
        i = 0
        while i < len(order):
            u = order[i]
            i += 1
            r = tri.rot[u]
            k = len(r)
            s0 = r.index(ref[u])
            for j in range(k):
                w = r[(s0 + j) % k]
                if w not in label:
                    label[w] = len(order)
                    ref[w] = u
                    order.append(w)
                code.append(label[w])
            code.append(-1)
        key = tuple(code)
        if best is None or key < best[0]:
            best = (key, label)
    assert best is not None
    return best


def cover_base_case(tri: PlaneTri) -> set[Edge]:
    """Cover of the octahedron (its inner triangle) or of the 11-vertex base graph."""
    n = len(tri.rot)
    if n == 6:
        rest = [v for v in tri.rot if v not in tri.root]
        if len(rest) != 3 or not all(tri.adjacent(u, v) for u, v in ((rest[0], rest[1]), (rest[1], rest[2]), (rest[0], rest[2]))):
            raise NotBaseCase("not an octahedron")
        return {edge_key(rest[0], rest[1]), edge_key(rest[1], rest[2]), edge_key(rest[0], rest[2])}
    if n == 11:
        degs = sorted(len(r) for r in tri.rot.values())
        if degs != [4] * 6 + [6] * 5:
            raise NotBaseCase("not the 11-vertex base graph")
        code, label = _rooted_labeling(tri)
        known = _BASE11_COVERS.get(code)
        if known is None:
            cover = flow_cover(tri)
            if cover is None:
                raise InternalInvariantViolation("11-vertex base graph without cover")
            _BASE11_COVERS[code] = frozenset(edge_key(label[u], label[v]) for u, v in cover)
            return cover
        back = {i: v for v, i in label.items()}
        return {edge_key(back[i], back[j]) for i, j in known}
    raise NotBaseCase(f"{n}-vertex triangulation is not a base case")


class GoodVertexIndex:
    """First-in first-out set of good vertices.

    Removals are lazy: a discarded vertex stays in the queue but is skipped
    when it reaches the front, so every operation is amortized constant time.
    """

    def __init__(self) -> None:
        self._queue: deque[int] = deque()
        self._live: set[int] = set()

    def add(self, v: int) -> None:
        if v not in self._live:
            self._live.add(v)
            self._queue.append(v)

    def discard(self, v: int) -> None:
        self._live.discard(v)

    def pop(self) -> int | None:
        while self._queue:
            v = self._queue.popleft()
            if v in self._live:
                self._live.remove(v)
                return v
        return None

    def __contains__(self, v: int) -> bool:
        return v in self._live

    def __len__(self) -> int:
        return len(self._live)


def build_cycle_cover(
    tri: PlaneTri,
    stats: DecompositionStats | None = None,
    check: bool = False,
) -> set[Edge]:
    """Rooted cycle cover of a 4-connected Eulerian triangulation by simplification.

    With ``check`` the partial cover is validated on the restored forest after
    every lift (quadratic; meant for tests).
    """
    if stats is None:
        stats = DecompositionStats()
    dec = Decomposer(tri)
    steps: list[SimplificationStep] = []
    good = GoodVertexIndex()
    for v in sorted(dec.rot):
        if dec.classify(v) == "good":
            good.add(v)
    stats.max_live_vertices = max(stats.max_live_vertices, len(dec.rot))
    while dec.rot:
        v = good.pop()
        step = None
        if v is not None:
            step = dec.simplify(v)
        else:
            stats.rescans += 1
            for w in sorted(dec.rot):
                if dec.deg(w) == 4 and w not in dec.root_of:
                    step = dec.simplify(w)
                    if step is not None:
                        break
            if step is None:
                comp = dec.component(next(iter(sorted(dec.rot))))
                assert comp is not None
                step = dec.remove_by_flow(comp)
                stats.flow_fallbacks += 1
        if step is None:
            continue
        steps.append(step)
        stats.count(step.rule)
        stats.max_live_vertices = max(stats.max_live_vertices, len(dec.rot))
        for w in dec.touched(step):
            if dec.classify(w) == "good":
                good.add(w)
            else:
                good.discard(w)
    cover = CoverSet()
    for step in reversed(steps):
        step.lift(cover)
        if check:
            dec.undo(step)
            bad = dec.violations(cover.edges)
            if bad:
                raise CoverInvalid(f"after lifting {step.rule} at {step.feature}: {bad[:3]}")
    result = cover.edges
    if validate_cover(tri, result):
        stats.lift_fallbacks += 1
        exact = flow_cover(tri)
        if exact is None:
            raise InternalInvariantViolation("4-connected component without rooted cycle cover")
        result = exact
    return result


def apply_and_undo_roundtrip(tri: PlaneTri, v: int) -> bool:
    """Apply the step found at ``v`` and undo it; True if the triangulation is restored."""
    dec = Decomposer(tri)
    before = ({k: list(r) for k, r in dec.rot.items()}, dict(dec.ecol), dict(dec.root_of))
    step = dec.simplify(v)
    if step is None:
        raise NotApplicable(f"no simplification seeded at {v}")
    dec.undo(step)
    return (dec.rot, dec.ecol, dec.root_of) == before


# ---------------------------------------------------------------------------
# Whole triangulations (separating triangles)
# ---------------------------------------------------------------------------


def merge_covers(tree: SeparatingTriangleTree, covers: dict[int, set[Edge]]) -> set[Edge]:
    """Union of per-component covers; all separating triangles must be odd."""
    even = tree.even_triangles()
    if even:
        raise EvenParityTriangle(
            f"separating triangle {even[0]} has even parity for this root", tuple(even[0])
        )
    out: set[Edge] = set()
    for comp in tree.components:
        out |= covers[comp.cid]
    return out


def rooted_cycle_cover(
    tri: PlaneTri,
    stats: DecompositionStats | None = None,
    tree: SeparatingTriangleTree | None = None,
) -> set[Edge]:
    """Rooted cycle cover of a whole Eulerian triangulation (raises on even parity)."""
    if tree is None:
        tree = separating_tree(tri)
    even = tree.even_triangles()
    if even:
        raise EvenParityTriangle(
            f"separating triangle {even[0]} has even parity for this root", tuple(even[0])
        )
    covers = {c.cid: build_cycle_cover(c.tri, stats) for c in tree.components}
    return merge_covers(tree, covers)
