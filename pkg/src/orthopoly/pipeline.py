"""End-to-end construction of realizations in each mode."""

from __future__ import annotations

from dataclasses import dataclass, field

from .cycle_cover import DecompositionStats, build_cycle_cover, rooted_cycle_cover
from .errors import NotRepresentable
from .euler_tri import EulerianTriangulation, dualize, separating_tree
from .geometry import (
    Face,
    OrthoPolyhedron,
    PlaneAssembly,
    ValidationReport,
    corner_coordinates,
    glue_corner_at_vertex,
    plane_numbers,
    validate_polyhedron,
    vertex_points,
)
from .graph_core import (
    GraphDocument,
    PlanarEmbedding,
    bipartition,
    embed_planar,
    require_connected,
    require_cubic,
    three_edge_coloring,
)
from .labeling import RegularEdgeLabeling, orient_from_cover

MODES = ("corner", "xyz", "simple")
NUMBERINGS = ("distinct", "compact")


@dataclass
class PipelineConfig:
    mode: str = "corner"
    root_vertex: int | None = None
    numbering: str = "compact"
    fmt: str = "json"
    validate: bool = True
    dump_rel: bool = False

    def __post_init__(self) -> None:
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.numbering not in NUMBERINGS:
            raise ValueError(f"unknown numbering {self.numbering!r}")
        if self.fmt not in ("json", "obj", "svg"):
            raise ValueError(f"unknown format {self.fmt!r}")
        if self.root_vertex is not None and self.mode != "corner":
            raise ValueError("a root vertex only applies to corner mode")
        if self.fmt == "svg" and self.mode != "corner":
            raise ValueError("svg output needs corner mode")


@dataclass
class Prepared:
    """A cubic bipartite plane graph together with its dual triangulation."""

    doc: GraphDocument
    emb: PlanarEmbedding
    dual: EulerianTriangulation

    @property
    def n(self) -> int:
        return self.doc.graph.n


@dataclass
class Realization:
    poly: OrthoPolyhedron
    report: ValidationReport | None = None
    labelings: list[RegularEdgeLabeling] = field(default_factory=list)
    stats: DecompositionStats = field(default_factory=DecompositionStats)


def embed(doc: GraphDocument) -> PlanarEmbedding:
    g = doc.graph
    require_connected(g)
    require_cubic(g)
    outer = doc.outer_face
    return embed_planar(g, doc.rotations, outer)


def prepare(doc: GraphDocument, root_vertex: int = 0) -> Prepared:
    """Run the checks shared by the corner and xyz modes and build the dual."""
    g = doc.graph
    require_connected(g)
    require_cubic(g)
    bip = bipartition(g)
    emb = embed_planar(g, doc.rotations, doc.outer_face)
    coloring = three_edge_coloring(emb, bip)
    if not 0 <= root_vertex < g.n:
        raise ValueError(f"root vertex {root_vertex} is out of range")
    return Prepared(doc, emb, dualize(emb, bip, coloring, root_vertex))


def _polyhedron(prep: Prepared, planes: dict[int, tuple[int, int]], mode: str, hidden: int | None) -> OrthoPolyhedron:
    pts = vertex_points(prep.dual.triangles, planes)
    faces = [Face(planes[f][0], planes[f][1], list(c)) for f, c in enumerate(prep.emb.faces)]
    return OrthoPolyhedron(mode, pts, faces, hidden)


def realize_corner(prep: Prepared, root: int, numbering: str = "compact",
                   stats: DecompositionStats | None = None) -> Realization:
    """Corner polyhedron with primal vertex ``root`` hidden at the origin."""
    dual = prep.dual if prep.dual.root_triangle == root else prep.dual.with_root(root)
    stats = stats or DecompositionStats()
    cover = rooted_cycle_cover(dual.tri, stats)
    rel = orient_from_cover(dual.tri, cover)
    planes = corner_coordinates(dual.tri, rel, numbering)
    return Realization(_polyhedron(prep, planes, "corner", root), labelings=[rel], stats=stats)


def realize_xyz(prep: Prepared, numbering: str = "compact",
                stats: DecompositionStats | None = None) -> Realization:
    """xyz polyhedron: corner polyhedra of the 4-connected pieces glued at vertices."""
    stats = stats or DecompositionStats()
    tree = separating_tree(prep.dual.tri)
    assembly = PlaneAssembly(distinct=numbering == "distinct")
    local: dict[int, dict[int, tuple[int, int]]] = {}
    signs: dict[int, tuple[int, int, int]] = {}
    rels = []
    for comp in tree.components:
        rel = orient_from_cover(comp.tri, build_cycle_cover(comp.tri, stats))
        rels.append(rel)
        planes = plane_numbers(comp.tri, rel, "distinct")
        local[comp.cid] = planes
        if comp.parent is None:
            assembly.add_root(planes)
            signs[comp.cid] = (1, 1, 1)
        else:
            parent = tree.components[comp.parent]
            signs[comp.cid] = glue_corner_at_vertex(
                assembly, parent.tri, local[parent.cid], signs[parent.cid], comp.boundary, planes
            )
    planes = assembly.finalize(compact=numbering == "compact")
    return Realization(_polyhedron(prep, planes, "xyz", None), labelings=rels, stats=stats)


def realize(doc: GraphDocument, cfg: PipelineConfig) -> Realization:
    """Build (and unless disabled, validate) a realization as configured."""
    if cfg.mode == "simple":
        from .simple import realize_simple

        res = realize_simple(doc)
    else:
        root = cfg.root_vertex if cfg.root_vertex is not None else 0
        prep = prepare(doc, root if cfg.mode == "corner" else 0)
        if cfg.mode == "corner":
            res = realize_corner(prep, root, cfg.numbering)
        else:
            res = realize_xyz(prep, cfg.numbering)
    if cfg.validate:
        res.report = validate_polyhedron(
            res.poly, coordinate_bound=cfg.mode == "xyz" and cfg.numbering == "compact"
        )
    return res


def representable_roots(prep: Prepared) -> dict[int, str | None]:
    """For each vertex: None if it can be the hidden vertex, else the obstruction."""
    out: dict[int, str | None] = {}
    tree_cache = {}
    for v in range(prep.n):
        try:
            dual = prep.dual.with_root(v)
            tree = separating_tree(dual.tri)
            tree_cache[v] = tree
            even = tree.even_triangles()
            if even:
                out[v] = "EvenParityTriangle"
                continue
            rooted_cycle_cover(dual.tri, tree=tree)
            out[v] = None
        except NotRepresentable as exc:
            out[v] = exc.reason
    return out


def classify(doc: GraphDocument) -> dict:
    """Structural facts and per-mode verdicts, as printed by ``orthopoly check``.

    Each stage only runs when the previous ones hold, so a non-cubic input
    still gets a report with the later entries left as ``None``.
    """
    import networkx as nx

    from .errors import NotBipartite, NonPlanar
    from .graph_core import check_cubic, is_connected, vertex_connectivity_class
    from .spqr import build_spqr, has_p_node

    g = doc.graph
    rep: dict = {
        "vertices": g.n,
        "edges": g.m,
        "cubic": check_cubic(g),
        "connected": is_connected(g),
        "bipartite": None,
        "planar": None,
        "connectivity": vertex_connectivity_class(g),
        "spqr": None,
        "dual_eulerian": None,
        "separating_triangles": None,
        "root_parities": None,
        "corner_roots": None,
        "verdicts": {"corner": False, "xyz": False, "simple": False},
        "reasons": {},
    }
    reasons = rep["reasons"]
    try:
        bip = bipartition(g)
        rep["bipartite"] = True
    except NotBipartite:
        bip = None
        rep["bipartite"] = False
    try:
        emb = embed_planar(g, doc.rotations, doc.outer_face) if rep["connected"] else None
        rep["planar"] = emb is not None
    except NonPlanar:
        emb = None
        rep["planar"] = False
    if rep["planar"] is None:
        rep["planar"] = nx.check_planarity(g.to_networkx())[0]
    base = None
    for key, ok, why in (
        ("connected", rep["connected"], "NotConnected"),
        ("cubic", rep["cubic"], "NotCubic"),
        ("bipartite", rep["bipartite"], "NotBipartite"),
        ("planar", rep["planar"], "NonPlanar"),
    ):
        if not ok:
            base = why
            break
    if base is not None:
        reasons.update(corner=base, xyz=base, simple=base)
        return rep
    if rep["connectivity"] >= 2:
        tree = build_spqr(g)
        rep["spqr"] = tree.census()
        if has_p_node(tree):
            reasons["simple"] = "PNode"
        else:
            rep["verdicts"]["simple"] = True
    else:
        reasons["simple"] = "NotBiconnected"
    if rep["connectivity"] < 3:
        reasons.update(corner="NotPolyhedral", xyz="NotPolyhedral")
        return rep
    prep = Prepared(doc, emb, dualize(emb, bip, three_edge_coloring(emb, bip), 0))
    rep["dual_eulerian"] = all(d % 2 == 0 for d in map(len, prep.dual.tri.rot.values()))
    rep["verdicts"]["xyz"] = True
    parities: dict[int, list[str]] = {}
    for v in range(g.n):
        tree = separating_tree(prep.dual.with_root(v).tri)
        parities[v] = sorted(c.parity for c in tree.components if c.parity is not None)
    rep["separating_triangles"] = len(parities[0]) if parities else 0
    rep["root_parities"] = parities
    reps = representable_roots(prep)
    rep["corner_roots"] = sorted(v for v, r in reps.items() if r is None)
    rep["verdicts"]["corner"] = bool(rep["corner_roots"])
    bad = sorted({r for r in reps.values() if r is not None})
    if bad:
        reasons["corner"] = ",".join(bad)
    return rep
