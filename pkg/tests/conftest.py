from __future__ import annotations

import os
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from orthopoly.corpus import bundled_corpus
from orthopoly.graph_core import GraphDocument, format_document
from orthopoly.instances import eulerian_from_faces, primal_doc

settings.register_profile(
    "default",
    max_examples=40,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def corpus_faces(max_dual: int = 14):
    """``(dual size, index, faces)`` for every bundled triangulation up to ``max_dual`` vertices."""
    out = []
    for nv, lst in sorted(bundled_corpus().items()):
        if nv <= max_dual:
            out.extend((nv, i, faces) for i, faces in enumerate(lst))
    return out


def corpus_ids(items) -> list[str]:
    return [f"dual{nv}-{i}" for nv, i, _ in items]


def write_doc(path: Path, doc: GraphDocument) -> Path:
    path.write_text(format_document(doc.graph, doc.rotations))
    return path


def run_cli(*args: str) -> tuple[int, str, str]:
    """Run the CLI in-process, returning (exit code, stdout, stderr)."""
    import contextlib
    import io

    from orthopoly.cli import main

    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = main(list(args))
    return code, out.getvalue(), err.getvalue()


@pytest.fixture
def cube_file(tmp_path: Path) -> Path:
    from orthopoly.instances import cube

    return write_doc(tmp_path / "cube.json", cube())


__all__ = ["corpus_faces", "corpus_ids", "eulerian_from_faces", "primal_doc", "run_cli", "write_doc"]
