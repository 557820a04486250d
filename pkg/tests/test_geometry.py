from __future__ import annotations

import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from orthopoly.errors import MalformedInput, NotCornerMode
from orthopoly.geometry import (
    HEAD,
    CoordSeq,
    Face,
    OrthoPolyhedron,
    _splice,
    check_bounds,
    check_intersections,
    check_xyz_lines,
    face_features,
    isometric_project,
    iso_point,
    parse_polyhedron,
    polyhedron_from_dict,
    validate_polyhedron,
)
from orthopoly.instances import cube
from orthopoly.pipeline import PipelineConfig, realize

# A box: vertex i has coordinates given by its bits (x = bit 0, y = bit 1, z = bit 2).
_BOX_FACES = [
    (0, 0, [0, 2, 6, 4]),
    (1, 0, [0, 4, 5, 1]),
    (2, 0, [0, 1, 3, 2]),
    (0, 1, [1, 5, 7, 3]),
    (1, 1, [2, 3, 7, 6]),
    (2, 1, [4, 6, 7, 5]),
]


def box(lo=(0, 0, 0), hi=(1, 1, 1), mode="xyz", offset=0) -> OrthoPolyhedron:
    pts = [tuple(hi[a] if (i >> a) & 1 else lo[a] for a in range(3)) for i in range(8)]
    faces = [Face(a, hi[a] if side else lo[a], [v + offset for v in cyc]) for a, side, cyc in _BOX_FACES]
    return OrthoPolyhedron(mode, pts, faces, 0 if mode == "corner" and lo == (0, 0, 0) else None)


def two_boxes(shift) -> OrthoPolyhedron:
    a = box()
    b = box(shift, tuple(s + 1 for s in shift), offset=8)
    return OrthoPolyhedron("xyz", a.vertices + b.vertices, a.faces + b.faces)


# -- coordinate lists ----------------------------------------------------------


def test_coord_seq_insertions_keep_order():
    seq = CoordSeq()
    a = seq.new_slots(3)
    seq.append(a)
    b = seq.new_slots(2)
    seq.insert_after(a[0], b)
    c = seq.new_slots(1)
    seq.insert_before(a[0], c)
    assert seq.order() == [c[0], a[0], b[0], b[1], a[1], a[2]]
    assert seq.ranks({a[0], a[2]}) == {a[0]: 0, a[2]: 1}
    assert len(seq) == 6


def test_splice_on_both_sides():
    seq = CoordSeq()
    (anchor,) = seq.new_slots(1)
    seq.append([anchor])
    right = _splice(seq, anchor, [3, 1, 2], +1)
    left = _splice(seq, anchor, [1, 2], -1)
    order = seq.order()
    # values grow away from the anchor on either side
    assert order == [left[2], left[1], anchor, right[1], right[2], right[3]]


@given(st.lists(st.tuples(st.booleans(), st.integers(0, 50)), max_size=40))
def test_coord_seq_matches_list_model(ops):
    seq = CoordSeq()
    model: list[int] = []
    for after, pick in ops:
        (s,) = seq.new_slots(1)
        if not model:
            seq.append([s])
            model.append(s)
            continue
        anchor = model[pick % len(model)]
        i = model.index(anchor)
        if after:
            seq.insert_after(anchor, [s])
            model.insert(i + 1, s)
        else:
            seq.insert_before(anchor, [s])
            model.insert(i, s)
    assert seq.order() == model
    assert seq.nxt[HEAD] == (model[0] if model else -2)


# -- documents -----------------------------------------------------------------


def test_box_document_round_trip_is_byte_stable():
    p = box(mode="corner")
    text = p.to_json()
    assert parse_polyhedron(text).to_json() == text
    assert json.loads(text)["hidden_vertex"] == 0
    assert "hidden_vertex" not in box().to_dict()


def test_obj_export():
    lines = box().to_obj().splitlines()
    assert lines[0].startswith("#")
    assert sum(ln.startswith("v ") for ln in lines) == 8
    assert "f 1 3 7 5" in lines


@pytest.mark.parametrize(
    "doc",
    [
        [],
        {"mode": "cubist", "vertices": [], "faces": []},
        {"mode": "xyz", "vertices": [[0, 0]], "faces": []},
        {"mode": "xyz", "vertices": [[0, 0, 0.5]], "faces": []},
        {"mode": "xyz", "vertices": [[0, 0, 0]], "faces": [{"axis": "w", "plane": 0, "cycle": [0, 0, 0]}]},
        {"mode": "xyz", "vertices": [[0, 0, 0]], "faces": [{"axis": "x", "plane": 0, "cycle": [0, 1, 2]}]},
        {"mode": "corner", "vertices": [[0, 0, 0]], "faces": [], "hidden_vertex": 4},
    ],
)
def test_malformed_realizations(doc):
    with pytest.raises(MalformedInput):
        polyhedron_from_dict(doc)


# -- validation ----------------------------------------------------------------


def test_unit_box_is_clean():
    assert validate_polyhedron(box()).ok
    rep = validate_polyhedron(box(mode="corner"))
    assert rep.ok and "angle_census" in rep.checks


def test_perturbed_box_fails():
    p = box()
    p.vertices[7] = (1, 1, 2)
    rep = validate_polyhedron(p)
    assert not rep.ok
    assert rep.checks["axis_parallel"] and rep.checks["faces"]


def test_swapped_face_cycle_breaks_topology():
    p = box()
    p.faces[0].cycle = [0, 6, 2, 4]
    assert not validate_polyhedron(p).ok


def test_xyz_line_limit():
    p = box()
    assert check_xyz_lines(p) == []
    p.vertices.append((0, 0, 5))
    assert check_xyz_lines(p)


def test_coordinate_bound():
    assert check_bounds(box()) == []
    assert check_bounds(box(hi=(2, 1, 1)))


def test_l_shaped_face_splits_into_two_features():
    pts = [(0, 0, 0), (2, 0, 0), (2, 1, 0), (1, 1, 0), (1, 2, 0), (0, 2, 0)]
    p = OrthoPolyhedron("simple", pts, [Face(2, 0, list(range(6)))])
    feats = sorted(face_features(p, p.faces[0]))
    assert feats == [((0, 0, 0), (1, 2, 0)), ((1, 0, 0), (2, 1, 0))]


def test_overlapping_boxes_intersect():
    assert check_intersections(two_boxes((3, 0, 0))) == []
    assert check_intersections(two_boxes((0, 0, 0)))
    bad = check_intersections(OrthoPolyhedron("xyz", *_overlap((0, 0, 0), (2, 2, 2), (1, 1, 1))))
    assert bad


def _overlap(lo1, hi1, shift):
    a = box(lo1, hi1)
    b = box(shift, tuple(s + 2 for s in shift), offset=8)
    return a.vertices + b.vertices, a.faces + b.faces


def test_realized_box_matches_hand_coordinates():
    res = realize(cube(), PipelineConfig(mode="corner"))
    assert sorted(res.poly.vertices) == sorted(box().vertices)
    assert res.report.ok


# -- isometric drawing ---------------------------------------------------------


def test_box_drawing_has_two_bends():
    d = isometric_project(box(mode="corner"))
    assert d.bends == 2
    assert d.slopes_ok()
    assert len(d.hidden_paths) == 3
    assert d.hidden_vertex == 0 and 0 not in d.points
    svg = d.to_svg()
    assert svg.startswith("<svg") and svg.count("<polyline") == 12
    assert svg.count("stroke-dasharray") == 3


def test_iso_point_is_projection_along_diagonal():
    assert iso_point((1, 1, 1)) == iso_point((0, 0, 0))
    assert iso_point((2, 3, 1)) == (1, 2)


def test_drawing_needs_corner_mode():
    with pytest.raises(NotCornerMode):
        isometric_project(box())
