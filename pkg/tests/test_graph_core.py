from __future__ import annotations

import itertools

import networkx as nx
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_faces
from orthopoly.corpus import random_biconnected
from orthopoly.errors import DuplicateEdge, MalformedInput, NonPlanar, NotBipartite, NotCubic, SelfLoop
from orthopoly.graph_core import (
    UndirectedGraph,
    bipartition,
    embed_planar,
    format_document,
    format_edge_list,
    parse_document,
    require_cubic,
    three_edge_coloring,
    two_cut_components,
    vertex_connectivity_class,
)
from orthopoly.instances import cube, cube_chain, k4, k33, primal_doc, truncated_octahedron

SMALL = corpus_faces(10)


# -- parsing -----------------------------------------------------------------


def test_edge_list_and_json_agree():
    text = "4 3\n0 1\n1 2\n2 3\n"
    a = parse_document(text).graph
    b = parse_document('{"n": 4, "edges": [[0, 1], [1, 2], [2, 3]]}').graph
    assert a.edges == b.edges == [(0, 1), (1, 2), (2, 3)]


@pytest.mark.parametrize(
    "text, exc",
    [
        ("", MalformedInput),
        ("3 2\n0 1\n", MalformedInput),
        ("x y\n", MalformedInput),
        ("2 1\n0 5\n", MalformedInput),
        ("2 1\n1 1\n", SelfLoop),
        ("2 2\n0 1\n1 0\n", DuplicateEdge),
        ('{"n": 2}', MalformedInput),
        ('{"n": 2, "edges": [[0, true]]}', MalformedInput),
        ("{not json", MalformedInput),
    ],
)
def test_malformed_documents(text, exc):
    with pytest.raises(exc):
        parse_document(text)


def test_document_round_trip():
    doc = primal_doc(SMALL[-1][2])
    text = format_document(doc.graph, doc.rotations)
    again = parse_document(text)
    assert format_document(again.graph, again.rotations) == text
    assert parse_document(format_edge_list(doc.graph)).graph.edges == doc.graph.edges


# -- structure ---------------------------------------------------------------


def test_cube_bipartition_has_vertex_zero_on_side_a():
    bip = bipartition(cube().graph)
    assert bip.side[0] == 0
    assert all(bip.side[u] != bip.side[v] for u, v in cube().graph.edges)


def test_odd_cycle_witness_is_a_real_odd_cycle():
    g = k4().graph
    with pytest.raises(NotBipartite) as info:
        bipartition(g)
    cyc = info.value.witness
    assert len(cyc) % 2 == 1
    assert all(g.has_edge(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc)))


def test_require_cubic_names_the_vertex():
    with pytest.raises(NotCubic, match="vertex 0"):
        require_cubic(UndirectedGraph(3, [(0, 1), (1, 2)]))


def test_embedding_satisfies_euler_formula():
    for doc in (cube(), truncated_octahedron()):
        emb = embed_planar(doc.graph)
        assert doc.graph.n - doc.graph.m + len(emb.faces) == 2


def test_k33_is_not_planar():
    with pytest.raises(NonPlanar):
        embed_planar(k33().graph)


def test_bad_rotation_system_is_rejected():
    g = cube().graph
    rot = [sorted(a) for a in g.adj]  # sorted neighbour lists are not the cube's embedding
    with pytest.raises(NonPlanar):
        embed_planar(g, rot)


@pytest.mark.parametrize("nv, idx, faces", SMALL, ids=[f"dual{nv}-{i}" for nv, i, _ in SMALL])
def test_edge_coloring_is_proper_and_face_derived(nv, idx, faces):
    doc = primal_doc(faces)
    emb = embed_planar(doc.graph, doc.rotations)
    col = three_edge_coloring(emb, bipartition(doc.graph))
    for v in range(doc.graph.n):
        assert sorted(col.of(v, w) for w in doc.graph.adj[v]) == [0, 1, 2]
    for u, v in doc.graph.edges:
        fa, fb = col.face_color[emb.face_left(u, v)], col.face_color[emb.face_left(v, u)]
        assert {fa, fb, col.of(u, v)} == {0, 1, 2}


# -- connectivity ------------------------------------------------------------


def _brute_connectivity(g: UndirectedGraph) -> int:
    h = g.to_networkx()
    if not nx.is_connected(h):
        return 0
    for k in (1, 2):
        for cut in itertools.combinations(range(g.n), k):
            hh = h.copy()
            hh.remove_nodes_from(cut)
            if not nx.is_connected(hh):
                return k
    return 3


def test_connectivity_classes_of_named_graphs():
    assert vertex_connectivity_class(cube().graph) == 3
    assert vertex_connectivity_class(cube_chain(3).graph) == 2
    two = UndirectedGraph(16, cube().graph.edges + [(u + 8, v + 8) for u, v in cube().graph.edges])
    assert vertex_connectivity_class(two) == 0


@given(st.integers(1, 3), st.integers(0, 10_000))
def test_connectivity_matches_brute_force(atoms, seed):
    g = random_biconnected(atoms, seed=seed, atom_size=(6, 8)).graph
    assert vertex_connectivity_class(g) == _brute_connectivity(g)


def test_two_cut_report_matches_brute_force():
    for doc in (cube(), cube_chain(2)):
        g = doc.graph
        h = g.to_networkx()
        best = 0
        for u, v in itertools.combinations(range(g.n), 2):
            hh = h.copy()
            hh.remove_nodes_from((u, v))
            best = max(best, nx.number_connected_components(hh) + g.has_edge(u, v))
        assert two_cut_components(g).max_components == best
