from __future__ import annotations

import itertools
import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_faces, corpus_ids
from orthopoly.corpus import random_eulerian
from orthopoly.errors import NotSeparating
from orthopoly.euler_tri import (
    BLUE,
    WHITE,
    check_rainbow,
    dump_triangulation,
    enumerate_triangles,
    load_triangulation,
    separating_tree,
    separating_triangles,
    triangle_parity,
)
from orthopoly.instances import eulerian_from_faces, nested_octahedron_faces, octahedron_faces

CORPUS = corpus_faces(12)


def _brute_triangles(t):
    return sorted(
        tuple(sorted(c))
        for c in itertools.combinations(sorted(t.rot), 3)
        if t.adjacent(c[0], c[1]) and t.adjacent(c[1], c[2]) and t.adjacent(c[0], c[2])
    )


def test_octahedron_is_dual_of_cube():
    e = eulerian_from_faces(octahedron_faces())
    assert e.nv == 6
    assert len(e.triangles) == 8
    assert all(len(r) == 4 for r in e.tri.rot.values())
    assert check_rainbow(e.tri).ok
    assert separating_triangles(e.tri) == []


@pytest.mark.parametrize("nv, idx, faces", CORPUS, ids=corpus_ids(CORPUS))
def test_corpus_triangulations_are_rainbow(nv, idx, faces):
    t = eulerian_from_faces(faces).tri
    assert len(t.rot) == nv
    assert check_rainbow(t).ok
    assert enumerate_triangles(t) == _brute_triangles(t)


@given(st.integers(0, 10_000), st.integers(8, 30))
def test_triangle_enumeration_matches_brute_force(seed, size):
    t = eulerian_from_faces(random_eulerian(size, seed=seed, octahedra=True)).tri
    assert enumerate_triangles(t) == _brute_triangles(t)


@given(st.integers(0, 10_000))
def test_triangle_colors_alternate(seed):
    e = eulerian_from_faces(random_eulerian(20, seed=seed))
    root = e.root_triangle
    assert e.tri_color[root] == WHITE
    # triangles sharing an edge have opposite colors
    owner = {}
    for i, (a, b, c) in enumerate(e.triangles):
        for x, y in ((a, b), (b, c), (c, a)):
            owner[(x, y)] = i
    for (x, y), i in owner.items():
        assert e.tri_color[i] != e.tri_color[owner[(y, x)]]


def test_nested_octahedron_parity_depends_on_root():
    e = eulerian_from_faces(nested_octahedron_faces(1))
    (sep,) = separating_triangles(e.tri)
    parities = {triangle_parity(e.with_root(v).tri, sep) for v in range(len(e.triangles))}
    assert parities == {"odd", "even"}
    # among roots on one side of the triangle, parity is decided by the root's color
    inside = set(e.tri.rot) - set(separating_tree(e.tri).components[0].tri.rot)
    for region in (True, False):
        by_color = {}
        for v, tri in enumerate(e.triangles):
            if bool(inside & set(tri)) == region:
                by_color.setdefault(e.tri_color[v], set()).add(triangle_parity(e.with_root(v).tri, sep))
        assert all(len(s) == 1 for s in by_color.values())
        assert by_color[WHITE] != by_color[BLUE]


def test_parity_rejects_faces_and_non_triangles():
    e = eulerian_from_faces(octahedron_faces())
    a, b, c = e.triangles[0]
    with pytest.raises(NotSeparating):
        triangle_parity(e.tri, (a, b, c))
    opposite = next(v for v in e.tri.rot if not e.tri.adjacent(a, v) and v != a)
    with pytest.raises(NotSeparating):
        triangle_parity(e.tri, (a, b, opposite))


@given(st.integers(0, 10_000), st.integers(10, 40))
def test_separating_tree_components_are_four_connected(seed, size):
    t = eulerian_from_faces(random_eulerian(size, seed=seed, octahedra=True)).tri
    tree = separating_tree(t)
    assert len(tree.components) == len(separating_triangles(t)) + 1
    interior = set()
    for comp in tree.components:
        assert separating_triangles(comp.tri) == []
        assert all(len(r) % 2 == 0 for r in comp.tri.rot.values())
        inner = set(comp.tri.rot) - set(comp.tri.root)
        assert not inner & interior
        interior |= inner
        if comp.parent is not None:
            assert set(comp.boundary) <= set(tree.components[comp.parent].tri.rot)
    assert interior | set(t.root) == set(t.rot)


def test_dump_and_load_round_trip():
    t = eulerian_from_faces(nested_octahedron_faces(1)).tri
    doc = json.loads(json.dumps(dump_triangulation(t)))
    back = load_triangulation(doc)
    assert back.rot == t.rot and back.ecol == t.ecol and back.root == t.root
    assert {row[3] for row in doc["triangles"]} == {"white", "blue"}
