from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import corpus_faces, corpus_ids
from orthopoly.corpus import random_eulerian
from orthopoly.cycle_cover import (
    DecompositionStats,
    apply_and_undo_roundtrip,
    build_cycle_cover,
    cover_cycles,
    flow_cover,
    merge_covers,
    oracle_cycle_cover,
    rooted_cycle_cover,
    validate_cover,
)
from orthopoly.errors import EvenParityTriangle, NotApplicable, TooLarge
from orthopoly.euler_tri import separating_tree
from orthopoly.graph_core import edge_key
from orthopoly.instances import delta11_faces, eulerian_from_faces, nested_octahedron_faces, octahedron_faces

CORPUS = corpus_faces(12)


def test_octahedron_cover_is_the_opposite_triangle():
    # derived by hand: with the root triangle fixed, every other white triangle
    # must contribute the edge between two of the three remaining vertices
    t = eulerian_from_faces(octahedron_faces()).tri
    rest = sorted(set(t.rot) - set(t.root))
    expected = {edge_key(rest[0], rest[1]), edge_key(rest[1], rest[2]), edge_key(rest[0], rest[2])}
    assert build_cycle_cover(t) == expected
    assert oracle_cycle_cover(t) == expected
    assert validate_cover(t, expected) == []


def test_validate_cover_reports_problems():
    t = eulerian_from_faces(octahedron_faces()).tri
    rest = sorted(set(t.rot) - set(t.root))
    assert validate_cover(t, {edge_key(rest[0], rest[1])})
    a = t.root[0]
    assert validate_cover(t, {edge_key(a, rest[0]), edge_key(rest[0], rest[1]), edge_key(rest[1], rest[2])})


def test_delta11_needs_its_base_case():
    t = eulerian_from_faces(delta11_faces()).tri
    stats = DecompositionStats()
    cover = build_cycle_cover(t, stats)
    assert validate_cover(t, cover) == []
    assert stats.steps.get("base11", 0) == 1
    assert oracle_cycle_cover(t) is not None


def test_oracle_refuses_large_inputs():
    t = eulerian_from_faces(random_eulerian(20, seed=1)).tri
    with pytest.raises(TooLarge):
        oracle_cycle_cover(t)


@pytest.mark.parametrize("nv, idx, faces", CORPUS, ids=corpus_ids(CORPUS))
def test_three_routes_agree_on_corpus(nv, idx, faces):
    e = eulerian_from_faces(faces)
    for root in range(len(e.triangles)):
        t = e.with_root(root).tri
        oracle = oracle_cycle_cover(t)
        flow = flow_cover(t)
        assert (oracle is None) == (flow is None)
        if flow is not None:
            assert validate_cover(t, flow) == []
        try:
            cover = rooted_cycle_cover(t)
        except EvenParityTriangle:
            assert oracle is None
        else:
            assert oracle is not None
            assert validate_cover(t, cover) == []


@given(st.integers(0, 10_000), st.integers(8, 60))
def test_lifted_cover_stays_valid_after_every_step(seed, size):
    t = eulerian_from_faces(random_eulerian(size, seed=seed)).tri
    for comp in separating_tree(t).components:
        stats = DecompositionStats()
        cover = build_cycle_cover(comp.tri, stats, check=True)
        assert validate_cover(comp.tri, cover) == []
        assert stats.lift_fallbacks == 0


@given(st.integers(0, 10_000), st.integers(8, 40))
def test_simplification_steps_undo_exactly(seed, size):
    t = eulerian_from_faces(random_eulerian(size, seed=seed)).tri
    for comp in separating_tree(t).components:
        for v in sorted(comp.tri.rot):
            if len(comp.tri.rot[v]) != 4 or v in comp.tri.root:
                continue
            try:
                assert apply_and_undo_roundtrip(comp.tri, v)
            except NotApplicable:
                pass


@given(st.integers(0, 10_000), st.integers(10, 40))
def test_cover_consists_of_disjoint_cycles(seed, size):
    t = eulerian_from_faces(random_eulerian(size, seed=seed, octahedra=True)).tri
    try:
        cover = rooted_cycle_cover(t)
    except EvenParityTriangle as exc:
        assert exc.triangle in separating_tree(t).even_triangles()
        return
    cycles = cover_cycles(cover)
    covered = [v for c in cycles for v in c]
    assert len(covered) == len(set(covered))
    assert set(covered) == set(t.rot) - set(t.root)
    assert all(len(c) >= 3 for c in cycles)


def test_merge_refuses_even_parity():
    e = eulerian_from_faces(nested_octahedron_faces(1))
    for root in range(len(e.triangles)):
        tree = separating_tree(e.with_root(root).tri)
        covers = {c.cid: build_cycle_cover(c.tri) for c in tree.components}
        if tree.even_triangles():
            with pytest.raises(EvenParityTriangle):
                merge_covers(tree, covers)
        else:
            assert validate_cover(e.with_root(root).tri, merge_covers(tree, covers)) == []
