"""Command-line entry point.

Exit codes: 0 success, 1 validator violations (or an internal failure),
2 the graph is not representable in the requested mode, 3 invalid input.
"""

from __future__ import annotations

import argparse
import gc
import json
import sys
from pathlib import Path

from .cycle_cover import oracle_cycle_cover
from .errors import InputError, InternalError, NotCornerMode, NotRepresentable, OrthoError, TooLarge
from .euler_tri import dump_triangulation, load_triangulation
from .geometry import isometric_project, parse_polyhedron, validate_polyhedron
from .graph_core import parse_document
from .labeling import dump_rel
from .pipeline import NUMBERINGS, PipelineConfig, classify, prepare, realize, representable_roots

EXIT_OK = 0
EXIT_VIOLATIONS = 1
EXIT_NOT_REPRESENTABLE = 2
EXIT_INVALID = 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on usage errors, which would collide with the
    # NotRepresentable code, so route them through exit 3 instead.
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.prog}: {message}")


def _read(path: str) -> str:
    try:
        return Path(path).read_text() if path != "-" else sys.stdin.read()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _write(path: str | None, text: str) -> None:
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _yn(flag: bool | None) -> str:
    return "n/a" if flag is None else ("yes" if flag else "no")


def format_check(rep: dict) -> str:
    lines = [
        f"vertices: {rep['vertices']}",
        f"edges: {rep['edges']}",
        f"cubic: {_yn(rep['cubic'])}",
        f"bipartite: {_yn(rep['bipartite'])}",
        f"planar: {_yn(rep['planar'])}",
        f"connectivity: {rep['connectivity']}",
    ]
    spqr = rep["spqr"]
    lines.append("spqr: n/a" if spqr is None else "spqr: " + " ".join(f"{k}={v}" for k, v in spqr.items()))
    lines.append(f"dual_eulerian: {_yn(rep['dual_eulerian'])}")
    if rep["separating_triangles"] is not None:
        lines.append(f"separating_triangles: {rep['separating_triangles']}")
        for v, par in rep["root_parities"].items():
            odd = par.count("odd")
            lines.append(f"  root {v}: odd={odd} even={len(par) - odd}")
    if rep["corner_roots"] is not None:
        lines.append("corner_roots: " + " ".join(map(str, rep["corner_roots"])))
    for mode in ("corner", "xyz", "simple"):
        ok = rep["verdicts"][mode]
        why = rep["reasons"].get(mode)
        lines.append(f"{mode}: {'yes' if ok else 'no'}" + (f" ({why})" if why and not ok else ""))
    return "\n".join(lines) + "\n"


def cmd_check(args: argparse.Namespace) -> int:
    rep = classify(parse_document(_read(args.file)))
    if args.json:
        sys.stdout.write(json.dumps(rep, sort_keys=True) + "\n")
    else:
        sys.stdout.write(format_check(rep))
    return EXIT_OK


def _render(res, fmt: str) -> str:
    if fmt == "json":
        return res.poly.to_json()
    if fmt == "obj":
        return res.poly.to_obj()
    return isometric_project(res.poly).to_svg()


def _all_roots(args: argparse.Namespace, doc) -> int:
    if args.mode != "corner":
        raise UsageError("--all-roots only applies to corner mode")
    reps = representable_roots(prepare(doc))
    good = sorted(v for v, r in reps.items() if r is None)
    summary = {
        "representable": good,
        "obstructions": {str(v): r for v, r in sorted(reps.items()) if r is not None},
    }
    print(json.dumps(summary))
    if not good:
        print(f"NotRepresentable: no vertex can be hidden ({', '.join(sorted(set(summary['obstructions'].values())))})",
              file=sys.stderr)
        return EXIT_NOT_REPRESENTABLE
    if args.output:
        args.root = good[0]
        args.all_roots = False
        return cmd_realize(args)
    return EXIT_OK


def cmd_realize(args: argparse.Namespace) -> int:
    doc = parse_document(_read(args.file))
    if args.all_roots:
        return _all_roots(args, doc)
    try:
        cfg = PipelineConfig(
            mode=args.mode,
            root_vertex=args.root,
            numbering=args.numbering,
            fmt=args.format,
            validate=not args.no_validate,
            dump_rel=args.dump_rel is not None,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.dump_delta is not None and cfg.mode == "simple":
        raise UsageError("--dump-delta needs corner or xyz mode")
    if cfg.root_vertex is not None and not 0 <= cfg.root_vertex < doc.graph.n:
        raise UsageError(f"root vertex {cfg.root_vertex} is out of range")
    # The pipeline allocates many small, acyclic objects; the cyclic
    # collector only costs time here.
    gc.disable()
    try:
        res = realize(doc, cfg)
    finally:
        gc.enable()
    _write(args.output, _render(res, cfg.fmt))
    if args.dump_rel is not None:
        dump = [dump_rel(rel) for rel in res.labelings]
        Path(args.dump_rel).write_text(json.dumps(dump, separators=(",", ":")) + "\n")
    if args.dump_delta is not None:
        tri = prepare(doc, cfg.root_vertex or 0).dual.tri
        Path(args.dump_delta).write_text(json.dumps(dump_triangulation(tri)) + "\n")
    if res.report is not None and not res.report.ok:
        for v in res.report.violations:
            print(f"violation: {v}", file=sys.stderr)
        return EXIT_VIOLATIONS
    return EXIT_OK


def cmd_validate(args: argparse.Namespace) -> int:
    poly = parse_polyhedron(_read(args.file))
    report = validate_polyhedron(poly, coordinate_bound=args.bound)
    if args.json:
        print(json.dumps(report.to_dict(), sort_keys=True))
    else:
        for name, problems in report.checks.items():
            print(f"{name}: {'ok' if not problems else f'{len(problems)} violation(s)'}")
        for v in report.violations:
            print(f"violation: {v}")
        print("ok" if report.ok else f"{len(report.violations)} violation(s)")
    return EXIT_OK if report.ok else EXIT_VIOLATIONS


def cmd_oracle_cover(args: argparse.Namespace) -> int:
    try:
        tri = load_triangulation(json.loads(_read(args.file)))
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"bad triangulation dump: {exc}") from exc
    try:
        cover = oracle_cycle_cover(tri, args.bound)
    except TooLarge as exc:
        raise UsageError(str(exc)) from exc
    print(json.dumps({"exists": cover is not None, "cover": sorted(map(list, cover or ()))}))
    return EXIT_OK if cover is not None else EXIT_NOT_REPRESENTABLE


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="orthopoly", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("check", help="classify a graph and report per-mode verdicts")
    c.add_argument("file")
    c.add_argument("--json", action="store_true", help="machine-readable report")
    c.set_defaults(func=cmd_check)

    r = sub.add_parser("realize", help="build integer coordinates for a graph")
    r.add_argument("file")
    r.add_argument("--mode", choices=("corner", "xyz", "simple"), required=True)
    r.add_argument("--root", type=int, default=None, help="hidden vertex (corner mode, default 0)")
    r.add_argument("--numbering", choices=NUMBERINGS, default="compact")
    r.add_argument("--format", choices=("json", "obj", "svg"), default="json")
    r.add_argument("--no-validate", action="store_true")
    r.add_argument("--all-roots", action="store_true",
                   help="report every vertex that can be hidden (corner mode)")
    r.add_argument("--dump-rel", metavar="PATH", default=None,
                   help="write the edge labelings used by the construction")
    r.add_argument("--dump-delta", metavar="PATH", default=None,
                   help="write the dual triangulation for 'oracle cycle-cover'")
    r.add_argument("-o", "--output", default=None, help="output path (stdout if omitted)")
    r.set_defaults(func=cmd_realize)

    v = sub.add_parser("validate", help="check a realization document")
    v.add_argument("file")
    v.add_argument("--bound", action="store_true",
                   help="also require coordinates in [0, ceil(n/4) - 1]")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_validate)

    o = sub.add_parser("oracle", help="brute-force reference searches")
    osub = o.add_subparsers(dest="oracle", required=True, parser_class=_Parser)
    oc = osub.add_parser("cycle-cover", help="exhaustive rooted cycle cover search")
    oc.add_argument("file")
    oc.add_argument("--bound", type=int, default=14, help="largest accepted vertex count")
    oc.set_defaults(func=cmd_oracle_cover)
    return p


def main(argv: list[str] | None = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except InputError as exc:
        print(f"{exc.reason}: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except NotRepresentable as exc:
        print(f"NotRepresentable: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_NOT_REPRESENTABLE
    except NotCornerMode as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (InternalError, OrthoError) as exc:
        print(f"internal error: {exc.reason}: {exc}", file=sys.stderr)
        return EXIT_VIOLATIONS
    except SystemExit as exc:
        # --help and --version exit through argparse with code 0
        return int(exc.code or 0)


if __name__ == "__main__":
    sys.exit(main())
