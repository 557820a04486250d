from __future__ import annotations

import json
import subprocess
import sys

import pytest
from hypothesis import given
from hypothesis import strategies as st

from conftest import run_cli, write_doc
from orthopoly.corpus import bundled_corpus
from orthopoly.geometry import parse_polyhedron, validate_polyhedron
from orthopoly.instances import (
    cube_chain,
    k4,
    k33,
    nested_octahedron_faces,
    primal_doc,
    three_cubes_two_hubs,
    truncated_octahedron,
)


def test_check_reports_cube(cube_file):
    code, out, _ = run_cli("check", str(cube_file))
    assert code == 0
    for line in ("cubic: yes", "bipartite: yes", "planar: yes", "connectivity: 3",
                 "spqr: S=0 P=0 R=1", "dual_eulerian: yes", "corner: yes", "xyz: yes", "simple: yes"):
        assert line in out.splitlines()


@pytest.mark.parametrize(
    "builder, expect",
    [
        (k4, ["bipartite: no", "corner: no (NotBipartite)", "simple: no (NotBipartite)"]),
        (k33, ["planar: no", "xyz: no (NonPlanar)"]),
        (three_cubes_two_hubs, ["simple: no (PNode)", "spqr: S=3 P=1 R=3"]),
    ],
)
def test_check_negative_verdicts(tmp_path, builder, expect):
    code, out, _ = run_cli("check", str(write_doc(tmp_path / "g.json", builder())))
    assert code == 0
    for line in expect:
        assert line in out.splitlines()


def test_check_lists_parities_per_root(tmp_path):
    path = write_doc(tmp_path / "nest.json", primal_doc(nested_octahedron_faces(1)))
    code, out, _ = run_cli("check", "--json", str(path))
    rep = json.loads(out)
    assert code == 0 and rep["separating_triangles"] == 1
    roots_ok = {int(v) for v, par in rep["root_parities"].items() if par == ["odd"]}
    assert roots_ok == set(rep["corner_roots"])


def test_realize_cube_as_box(tmp_path, cube_file):
    out = tmp_path / "box.json"
    code, _, err = run_cli("realize", "--mode", "corner", str(cube_file), "-o", str(out))
    assert code == 0, err
    poly = parse_polyhedron(out.read_text())
    assert sorted(poly.vertices) == [(x, y, z) for x in (0, 1) for y in (0, 1) for z in (0, 1)]
    code, text, _ = run_cli("validate", str(out))
    assert code == 0 and text.splitlines()[-1] == "ok"


@pytest.mark.parametrize("fmt, prefix", [("json", "{"), ("obj", "# orthopoly"), ("svg", "<svg")])
def test_output_formats(tmp_path, cube_file, fmt, prefix):
    out = tmp_path / f"out.{fmt}"
    code, _, _ = run_cli("realize", "--mode", "corner", "--format", fmt, str(cube_file), "-o", str(out))
    assert code == 0
    assert out.read_text().startswith(prefix)


@pytest.mark.parametrize(
    "args",
    [
        ["--mode", "xyz", "--root", "2"],
        ["--mode", "xyz", "--format", "svg"],
        ["--mode", "corner", "--root", "99"],
        ["--mode", "sideways"],
        [],
    ],
)
def test_usage_errors_exit_3(cube_file, args):
    code, _, err = run_cli("realize", *args, str(cube_file))
    assert code == 3 and err


@pytest.mark.parametrize(
    "builder, mode, reason",
    [
        (k4, "xyz", "NotBipartite"),
        (k33, "corner", "NonPlanar"),
        (three_cubes_two_hubs, "simple", "PNode"),
        (cube_chain, "xyz", "NotPolyhedral"),
    ],
)
def test_not_representable_exit_2(tmp_path, builder, mode, reason):
    doc = builder(2) if builder is cube_chain else builder()
    code, _, err = run_cli("realize", "--mode", mode, str(write_doc(tmp_path / "g.json", doc)))
    assert code == 2 and reason in err


def test_even_parity_root_exit_2_and_all_roots(tmp_path):
    path = write_doc(tmp_path / "nest.json", primal_doc(nested_octahedron_faces(1)))
    code, out, _ = run_cli("realize", "--mode", "corner", "--all-roots", str(path))
    summary = json.loads(out)
    assert code == 0
    bad = int(next(iter(summary["obstructions"])))
    code, _, err = run_cli("realize", "--mode", "corner", "--root", str(bad), str(path), "-o", str(tmp_path / "x"))
    assert code == 2 and "EvenParityTriangle" in err
    good = summary["representable"][0]
    code, _, _ = run_cli("realize", "--mode", "corner", "--root", str(good), str(path), "-o", str(tmp_path / "y"))
    assert code == 0


def test_invalid_input_exit_3(tmp_path):
    bad = tmp_path / "bad.txt"
    bad.write_text("3 5\n0 1\n")
    for cmd in (["check"], ["realize", "--mode", "xyz"], ["validate"]):
        code, _, _ = run_cli(*cmd, str(bad))
        assert code == 3
    assert run_cli("check", str(tmp_path / "missing.txt"))[0] == 3


def test_validate_reports_violations(tmp_path):
    doc = {
        "mode": "xyz",
        "vertices": [[(i >> a) & 1 for a in range(3)] for i in range(8)],
        "faces": [
            {"axis": "x", "plane": 0, "cycle": [0, 2, 6, 4]},
            {"axis": "y", "plane": 0, "cycle": [0, 4, 5, 1]},
            {"axis": "z", "plane": 0, "cycle": [0, 1, 3, 2]},
            {"axis": "x", "plane": 1, "cycle": [1, 5, 7, 3]},
            {"axis": "y", "plane": 1, "cycle": [2, 3, 7, 6]},
            {"axis": "z", "plane": 1, "cycle": [4, 6, 7, 5]},
        ],
    }
    path = tmp_path / "box.json"
    path.write_text(json.dumps(doc))
    assert run_cli("validate", str(path))[0] == 0
    doc["vertices"][7] = [1, 1, 3]
    path.write_text(json.dumps(doc))
    code, out, _ = run_cli("validate", "--json", str(path))
    assert code == 1 and json.loads(out)["ok"] is False


def test_dump_rel_and_oracle(tmp_path, cube_file):
    rel, delta = tmp_path / "rel.json", tmp_path / "delta.json"
    code, _, _ = run_cli("realize", "--mode", "corner", str(cube_file), "-o", str(tmp_path / "o.json"),
                         "--dump-rel", str(rel), "--dump-delta", str(delta))
    assert code == 0
    (labeling,) = json.loads(rel.read_text())
    assert len(labeling["arcs"]) == 12
    code, out, _ = run_cli("oracle", "cycle-cover", str(delta))
    assert code == 0 and json.loads(out)["exists"] is True


def test_oracle_without_cover_exits_2(tmp_path):
    from orthopoly.euler_tri import dump_triangulation
    from orthopoly.instances import eulerian_from_faces
    from orthopoly.pipeline import prepare, representable_roots

    doc = primal_doc(nested_octahedron_faces(1))
    reps = representable_roots(prepare(doc))
    bad = next(v for v, r in reps.items() if r is not None)
    tri = eulerian_from_faces(nested_octahedron_faces(1)).with_root(bad).tri
    path = tmp_path / "delta.json"
    path.write_text(json.dumps(dump_triangulation(tri)))
    code, out, _ = run_cli("oracle", "cycle-cover", str(path))
    assert code == 2 and json.loads(out) == {"exists": False, "cover": []}
    path.write_text('{"rotations": {}}')
    assert run_cli("oracle", "cycle-cover", str(path))[0] == 3


_SMALL = [faces for nv, lst in sorted(bundled_corpus().items()) if nv <= 12 for faces in lst]


@given(st.sampled_from(_SMALL), st.sampled_from(["xyz", "corner", "simple"]),
       st.sampled_from(["distinct", "compact"]))
def test_round_trip_is_byte_stable(faces, mode, numbering):
    import tempfile
    from pathlib import Path

    with tempfile.TemporaryDirectory() as d:
        src = write_doc(Path(d) / "g.json", primal_doc(faces))
        out = Path(d) / "r.json"
        code, _, _ = run_cli("realize", "--mode", mode, "--numbering", numbering, str(src), "-o", str(out))
        assert code in (0, 2)
        if code == 2:
            assert mode == "corner"
            return
        text = out.read_text()
        poly = parse_polyhedron(text)
        assert poly.to_json() == text
        assert validate_polyhedron(poly).ok


def test_console_script_entry_point(tmp_path):
    path = write_doc(tmp_path / "t.json", truncated_octahedron())
    proc = subprocess.run([sys.executable, "-m", "orthopoly.cli", "realize", "--mode", "xyz", str(path)],
                          capture_output=True, text=True, check=False)
    assert proc.returncode == 0
    assert parse_polyhedron(proc.stdout).mode == "xyz"
    proc = subprocess.run([sys.executable, "-m", "orthopoly.cli", "bogus"], capture_output=True, text=True)
    assert proc.returncode == 3


def test_k4_is_rejected_everywhere(tmp_path):
    path = write_doc(tmp_path / "k4.json", k4())
    _, out, _ = run_cli("check", "--json", str(path))
    assert json.loads(out)["verdicts"] == {"corner": False, "xyz": False, "simple": False}
