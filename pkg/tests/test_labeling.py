from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthopoly.corpus import random_eulerian
from orthopoly.cycle_cover import build_cycle_cover
from orthopoly.euler_tri import separating_tree
from orthopoly.graph_core import edge_key
from orthopoly.instances import delta11_faces, eulerian_from_faces, octahedron_faces
from orthopoly.labeling import (
    SINK,
    RegularEdgeLabeling,
    all_delta_xy,
    check_delta_xy,
    check_monochromatic,
    dump_rel,
    orient_from_cover,
    st_number,
    validate_rel,
)


def _octahedron_rel():
    t = eulerian_from_faces(octahedron_faces()).tri
    return t, orient_from_cover(t, build_cycle_cover(t))


def test_octahedron_labeling_is_valid():
    t, rel = _octahedron_rel()
    assert validate_rel(t, rel).ok
    assert check_monochromatic(t, rel) == []


def test_octahedron_inner_triangle_is_a_directed_cycle():
    t, rel = _octahedron_rel()
    a, b, c = sorted(set(t.rot) - set(t.root))
    cyc = rel.is_out(a, b) == rel.is_out(b, c) == rel.is_out(c, a)
    assert cyc


def test_octahedron_delta_graphs_have_seven_vertices():
    t, rel = _octahedron_rel()
    for gr in all_delta_xy(t, rel):
        assert gr.nverts == 7
        assert SINK in gr.out
        assert check_delta_xy(t, gr) == []


def test_flipping_an_edge_breaks_validation():
    t, rel = _octahedron_rel()
    e = next(iter(sorted(rel.head)))
    head = dict(rel.head)
    head[e] = e[0] if head[e] == e[1] else e[1]
    assert not validate_rel(t, RegularEdgeLabeling(t, head)).ok


def test_missing_direction_is_reported():
    t, rel = _octahedron_rel()
    head = dict(rel.head)
    head.pop(next(iter(head)))
    assert not validate_rel(t, RegularEdgeLabeling(t, head)).ok


def test_unknown_numbering_mode():
    t, rel = _octahedron_rel()
    with pytest.raises(ValueError):
        st_number(all_delta_xy(t, rel)[0], "sparse")


def test_dump_lists_every_edge_once():
    t = eulerian_from_faces(delta11_faces()).tri
    rel = orient_from_cover(t, build_cycle_cover(t))
    dump = dump_rel(rel)
    assert len(dump["arcs"]) == len(t.ecol)
    assert {edge_key(u, v) for u, v, _ in dump["arcs"]} == set(t.ecol)


@given(st.integers(0, 10_000), st.integers(6, 60))
def test_labeling_invariants_on_random_components(seed, size):
    t = eulerian_from_faces(random_eulerian(size, seed=seed, octahedra=True)).tri
    for comp in separating_tree(t).components:
        rel = orient_from_cover(comp.tri, build_cycle_cover(comp.tri))
        assert validate_rel(comp.tri, rel).violations == []
        assert check_monochromatic(comp.tri, rel) == []
        for gr in all_delta_xy(comp.tri, rel):
            assert check_delta_xy(comp.tri, gr) == []


@given(st.integers(0, 10_000), st.integers(6, 40))
def test_numberings_increase_along_arcs(seed, size):
    t = eulerian_from_faces(random_eulerian(size, seed=seed)).tri
    comp = separating_tree(t).components[0]
    rel = orient_from_cover(comp.tri, build_cycle_cover(comp.tri))
    for gr in all_delta_xy(comp.tri, rel):
        distinct = st_number(gr, "distinct")
        compact = st_number(gr, "compact")
        assert sorted(distinct.values()) == list(range(gr.nverts))
        for u, w in gr.arc_list():
            assert distinct[u] < distinct[w]
            assert compact[u] < compact[w]
        assert compact[gr.source] == 0
        # longest-path numbering: every positive value is forced by some arc
        preds = {}
        for u, w in gr.arc_list():
            preds.setdefault(w, []).append(u)
        for w, ps in preds.items():
            assert compact[w] == 1 + max(compact[u] for u in ps)
