from __future__ import annotations

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthopoly import geometry
from orthopoly.corpus import random_biconnected
from orthopoly.errors import NotBipartite, PNodePresent
from orthopoly.geometry import validate_polyhedron
from orthopoly.instances import cube, cube_chain, hexagonal_prism, k4, three_cubes_two_hubs, truncated_octahedron
from orthopoly.simple import realize_simple


@pytest.mark.parametrize("builder", [cube, hexagonal_prism, truncated_octahedron])
def test_three_connected_inputs_pass_through(builder):
    doc = builder()
    p = realize_simple(doc).poly
    assert p.mode == "simple" and len(p.vertices) == doc.graph.n
    assert validate_polyhedron(p).ok


@pytest.mark.parametrize("k", range(1, 7))
def test_cube_chains(k):
    doc = cube_chain(k)
    p = realize_simple(doc).poly
    rep = validate_polyhedron(p)
    assert rep.ok, rep.violations[:5]
    assert sorted(p.edges()) == sorted(doc.graph.edges)


def test_hub_graph_is_rejected():
    with pytest.raises(PNodePresent):
        realize_simple(three_cubes_two_hubs())


def test_non_bipartite_is_rejected():
    with pytest.raises(NotBipartite):
        realize_simple(k4())


@given(st.integers(2, 5), st.integers(0, 10_000))
def test_random_two_connected_instances(atoms, seed):
    doc = random_biconnected(atoms, seed=seed)
    p = realize_simple(doc).poly
    rep = validate_polyhedron(p)
    assert rep.ok, rep.violations[:5]
    assert sorted(p.edges()) == sorted(doc.graph.edges)


def test_validator_rejects_the_opposite_wedge(monkeypatch):
    # Negating the face areas sends every glued atom into the diagonally
    # opposite quadrant of its hinge edge, where it collides with the parent.
    real = geometry._signed_area2
    monkeypatch.setattr(geometry, "_signed_area2", lambda *a: -real(*a))
    bad = 0
    for seed in range(10):
        p = realize_simple(random_biconnected(3, seed=seed)).poly
        monkeypatch.setattr(geometry, "_signed_area2", real)
        bad += not validate_polyhedron(p).ok
        monkeypatch.setattr(geometry, "_signed_area2", lambda *a: -real(*a))
    assert bad == 10
