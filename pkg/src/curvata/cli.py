"""Command-line entry point: ``curvata <group> <command> ...``.

Every command prints one JSON report on stdout. Exit status is 0 when the
checked property holds, 1 when it was checked and fails, and 2 for unusable
input.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .artin_graph import (
    conjugacy_stable,
    derive_prime_labels,
    is_22_free,
    is_two_dimensional,
    parse_defining_graph,
)
from .curvature import gauss_bonnet, surface_defect
from .diagrams import (
    DiskDiagram,
    annulus_inequality_check,
    check_filling_diagram,
    reduce_to_locally_large,
    shortcut_search,
)
from .dihedral import build_ball, girth_check
from .errors import CurvataError, InputError, MissingExpectation
from .formats import format_complex, format_diagram, parse_complex, parse_diagram
from .simplicial_core import Cycle, Path as CorePath, format_rational, is_large, is_locally_large

PASS, FAIL, BAD_INPUT = 0, 1, 2


def _jsonable(x):
    if x is None or isinstance(x, (str, bool, int)):
        return x
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (frozenset, set)):
        return sorted(_jsonable(v) for v in x)
    if isinstance(x, (Cycle, CorePath)):
        return list(x.vertices)
    if isinstance(x, tuple):
        return [_jsonable(v) for v in x]
    if hasattr(x, "to_json"):
        return x.to_json()
    raise TypeError(f"cannot serialize {type(x).__name__}")


def render(report: dict) -> str:
    return json.dumps(report, sort_keys=True, indent=2, default=_jsonable) + "\n"


def _report(command, inputs, result, violations=()):
    return {"command": command, "inputs": inputs, "result": result,
            "violations": list(violations), "version": __version__}


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _witness(v):
    return None if v.witness is None else _jsonable(v.witness)


# --- artin ---------------------------------------------------------------

def cmd_artin_analyze(args):
    g = parse_defining_graph(_read(args.file))
    two_dim, free = is_two_dimensional(g), is_22_free(g)
    result = {
        "two_dimensional": two_dim.ok,
        "two_dimensional_witness": _witness(two_dim),
        "two_two_free": free.ok,
        "two_two_free_witness": _witness(free),
        "prime_labels": None,
        "repaired": [],
    }
    violations = [r.reason for r in (two_dim, free) if not r]
    if two_dim and free:
        pl = derive_prime_labels(g)
        result["prime_labels"] = pl.to_json()
        result["repaired"] = list(pl.repaired)
    return _report("artin analyze", {"file": args.file, "graph": g.to_json()}, result, violations), \
        PASS if not violations else FAIL


def cmd_artin_conjstab(args):
    g = parse_defining_graph(_read(args.file))
    subset = [s for s in args.subset.split(",") if s]
    v = conjugacy_stable(g, subset)
    result = {"stable": v.ok, "witness": _witness(v)}
    inputs = {"file": args.file, "graph": g.to_json(), "subset": sorted(subset)}
    return _report("artin conjstab", inputs, result, [v.reason] if not v else []), PASS if v else FAIL


# --- complexes -----------------------------------------------------------

def _complex_inputs(path, X):
    return {"file": path, "vertices": len(X.complex.vertices), "edges": len(X.complex.edges),
            "triangles": len(X.complex.triangles), "dimension": X.complex.dimension}


def cmd_complex_validate(args):
    X = parse_complex(_read(args.file))
    bad = X.violations()
    result = {"valid": not bad}
    return _report("complex validate", _complex_inputs(args.file, X), result, [str(v) for v in bad]), \
        PASS if not bad else FAIL


def cmd_complex_large(args):
    X = parse_complex(_read(args.file))
    bad = X.violations()
    if bad:
        return _report("complex large", _complex_inputs(args.file, X), {"large": None},
                       [str(v) for v in bad]), BAD_INPUT
    large = is_large(X, args.max_edges)
    local = is_locally_large(X, args.max_edges)
    result = {"large": large.ok, "witness": _witness(large), "reason": large.reason,
              "locally_large": local.ok, "local_witness": _witness(local)}
    ok = local.ok if args.local else large.ok
    violations = [r.reason for r in ((local,) if args.local else (large,)) if not r]
    return _report("complex large", _complex_inputs(args.file, X), result, violations), PASS if ok else FAIL


def cmd_curvature(args):
    X = parse_complex(_read(args.file))
    defect = surface_defect(X.complex)
    if defect is not None:
        return _report("curvature", _complex_inputs(args.file, X), None,
                       [f"{defect[0]}: {'-'.join(defect[1])}"]), BAD_INPUT
    rep = gauss_bonnet(X)
    result = rep.to_json()
    # lengths need not satisfy the triangle conditions for the identity; report them anyway
    result["length_violations"] = [str(v) for v in X.violations()]
    return _report("curvature", _complex_inputs(args.file, X), result,
                   [] if rep.residual == 0 else ["nonzero residual"]), PASS if rep.residual == 0 else FAIL


# --- diagrams ------------------------------------------------------------

def _load_diagram(path):
    disk, target, vmap, cycle = parse_diagram(_read(path))
    d = DiskDiagram(disk, target, vmap)
    inputs = {"file": path, "disk_triangles": len(disk.triangles), "target_vertices": len(target.complex.vertices),
              "cycle": list(cycle) if cycle else None}
    return d, cycle, inputs


def cmd_diagram_check(args):
    d, cycle, inputs = _load_diagram(args.file)
    if cycle is None:
        bd = d._d.boundary
        cycle = tuple(d.vertex_map.get(v, v) for v in bd) if bd else ()
    defects = check_filling_diagram(d, cycle)
    result = {"ok": not defects, "defects": [x.to_json() for x in defects]}
    return _report("diagram check", inputs, result, [x.detail for x in defects]), PASS if not defects else FAIL


def cmd_diagram_reduce(args):
    d, cycle, inputs = _load_diagram(args.file)
    log = []
    r = reduce_to_locally_large(d, log)
    local = r.is_locally_large()
    result = {
        "triangles_before": d.triangle_count,
        "triangles_after": r.triangle_count,
        "steps": [{"kind": k, "where": list(w), "before": b, "after": a} for k, w, b, a in log],
        "locally_large": local.ok,
        "boundary_length": format_rational(r.boundary_length()),
        "disk": [sorted(t) for t in r.disk.triangles],
    }
    if args.emit:
        Path(args.emit).write_text(format_diagram(r.disk, d.target, r.vertex_map, cycle), encoding="utf-8")
        result["emitted"] = args.emit
    return _report("diagram reduce", inputs, result, [] if local else [local.reason]), PASS if local else FAIL


def cmd_diagram_annulus(args):
    d, _, inputs = _load_diagram(args.file)
    chk = annulus_inequality_check(d)
    result = chk.to_json()
    violations = [] if chk.holds else [
        f"outer length {format_rational(chk.outer_length)} < inner length {format_rational(chk.inner_length)} + 2"]
    return _report("diagram annulus", inputs, result, violations), PASS if chk.holds else FAIL


def cmd_diagram_shortcut(args):
    d, _, inputs = _load_diagram(args.file)
    inputs.update({"from": args.source, "to": args.dest})
    s = shortcut_search(d, args.source, args.dest)
    violations = [f"path of length {format_rational(s.length)} beats both boundary arcs"] if s.shortcut else []
    return _report("diagram shortcut", inputs, s.to_json(), violations), FAIL if s.shortcut else PASS


# --- dihedral ------------------------------------------------------------

def _m_arg(text: str):
    if text.lower() in ("inf", "infinity"):
        return None
    try:
        m = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"m must be an integer >= 2 or 'inf', got {text!r}") from None
    if m < 2:
        raise argparse.ArgumentTypeError("m must be at least 2")
    return m


def cmd_dihedral_ball(args):
    ball = build_ball(args.m, args.radius)
    inputs = {"m": "inf" if args.m is None else args.m, "radius": args.radius}
    result = ball.to_json()
    result["bipartite_by_type"] = ball.is_bipartite_by_type()
    if args.emit:
        X = ball.as_length_complex()
        Path(args.emit).write_text(format_complex(X, default=Fraction(1, args.m)), encoding="utf-8")
        result["emitted"] = args.emit
    return _report("dihedral ball", inputs, result), PASS if result["bipartite_by_type"] else FAIL


def cmd_dihedral_girth(args):
    ball = build_ball(args.m, args.radius)
    rep = girth_check(ball)
    inputs = {"m": "inf" if args.m is None else args.m, "radius": args.radius}
    violations = [] if rep.passed else [f"cycle of length {rep.shortest_cycle} < {rep.bound}"]
    return _report("dihedral girth", inputs, rep.to_json(), violations), PASS if rep.passed else FAIL


# --- corpus --------------------------------------------------------------

def _run_captured(argv):
    out = io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(io.StringIO()):
        code = main(argv)
    try:
        return code, json.loads(out.getvalue())
    except json.JSONDecodeError:
        return code, None


def _subset_match(expected, actual) -> bool:
    if isinstance(expected, dict):
        return isinstance(actual, dict) and all(k in actual and _subset_match(v, actual[k]) for k, v in expected.items())
    return expected == actual


def cmd_corpus(args):
    """Run every input in a directory against its ``<name>.expect.json`` sidecar.

    A sidecar holds ``argv`` (with ``{input}`` standing for the input path),
    the expected ``exit`` status and an expected ``result``; every key given
    in ``result`` must match the actual report, other keys are ignored.
    """
    root = Path(args.directory)
    if not root.is_dir():
        raise InputError(f"{root} is not a directory")
    inputs = sorted(p for p in root.iterdir() if p.is_file() and not p.name.endswith(".expect.json"))
    entries = []
    for p in inputs:
        side = p.with_name(p.name + ".expect.json")
        if not side.exists():
            raise MissingExpectation(f"{p.name} has no {side.name}")
        try:
            expect = json.loads(side.read_text(encoding="utf-8"))
        except json.JSONDecodeError as exc:
            raise InputError(f"{side.name}: {exc}") from None
        argv = [a.replace("{input}", str(p)) for a in expect["argv"]]
        code, rep = _run_captured(argv)
        ok = code == expect.get("exit", PASS) and rep is not None and _subset_match(expect.get("result", {}), rep.get("result"))
        entries.append({"file": p.name, "pass": ok, "exit": code, "expected_exit": expect.get("exit", PASS)})
    failed = [e["file"] for e in entries if not e["pass"]]
    result = {"files": entries, "total": len(entries), "passed": len(entries) - len(failed), "failed": len(failed)}
    return _report("corpus", {"directory": str(root)}, result, [f"{f}: mismatch" for f in failed]), \
        FAIL if failed else PASS


# --- wiring --------------------------------------------------------------

class _UsageError(Exception):
    def __init__(self, prog, message):
        super().__init__(message)
        self.prog = prog


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise _UsageError(self.prog, message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="curvata", description="Exact checks for length complexes, disk diagrams and Artin groups.")
    p.add_argument("--version", action="version", version=__version__)
    p.add_argument("--json", action="store_true", default=True, help="JSON output (always on)")
    groups = p.add_subparsers(dest="group", required=True, parser_class=_Parser)

    artin = groups.add_parser("artin", help="defining graphs").add_subparsers(dest="cmd", required=True)
    a = artin.add_parser("analyze", help="hypotheses and reduced labels")
    a.add_argument("file")
    a.set_defaults(func=cmd_artin_analyze)
    a = artin.add_parser("conjstab", help="conjugacy stability of a standard parabolic subgroup")
    a.add_argument("file")
    a.add_argument("--subset", required=True, help="comma-separated generators")
    a.set_defaults(func=cmd_artin_conjstab)

    cx = groups.add_parser("complex", help="length complexes").add_subparsers(dest="cmd", required=True)
    c = cx.add_parser("validate", help="edge-length conditions")
    c.add_argument("file")
    c.set_defaults(func=cmd_complex_validate)
    c = cx.add_parser("large", help="largeness and local largeness")
    c.add_argument("file")
    c.add_argument("--max-edges", type=int, default=None, help="cycle bound when some edge has length 0")
    c.add_argument("--local", action="store_true", help="exit status follows local largeness")
    c.set_defaults(func=cmd_complex_large)

    c = groups.add_parser("curvature", help="Gauss-Bonnet audit of a surface")
    c.add_argument("file")
    c.set_defaults(func=cmd_curvature)

    dg = groups.add_parser("diagram", help="disk diagrams").add_subparsers(dest="cmd", required=True)
    c = dg.add_parser("check", help="is this a filling diagram for its cycle")
    c.add_argument("file")
    c.set_defaults(func=cmd_diagram_check)
    c = dg.add_parser("reduce", help="reduce to a locally large diagram")
    c.add_argument("file")
    c.add_argument("--emit", metavar="PATH", help="write the reduced diagram here")
    c.set_defaults(func=cmd_diagram_reduce)
    c = dg.add_parser("annulus", help="outer versus inner boundary of the boundary annulus")
    c.add_argument("file")
    c.set_defaults(func=cmd_diagram_annulus)
    c = dg.add_parser("shortcut", help="shortest path between boundary vertices")
    c.add_argument("file")
    c.add_argument("--from", dest="source", required=True)
    c.add_argument("--to", dest="dest", required=True)
    c.set_defaults(func=cmd_diagram_shortcut)

    dh = groups.add_parser("dihedral", help="rank-2 Artin complexes").add_subparsers(dest="cmd", required=True)
    for name, func, hlp in (("ball", cmd_dihedral_ball, "build a ball"), ("girth", cmd_dihedral_girth, "girth of a ball")):
        c = dh.add_parser(name, help=hlp)
        c.add_argument("--m", type=_m_arg, required=True)
        c.add_argument("--radius", type=int, required=True)
        if name == "ball":
            c.add_argument("--emit", metavar="PATH", help="write the ball as a complex file")
        c.set_defaults(func=func)

    c = groups.add_parser("corpus", help="run a directory of inputs against expectation sidecars")
    c.add_argument("directory")
    c.set_defaults(func=cmd_corpus)
    return p


def command_name(args) -> str:
    return " ".join(x for x in (args.group, getattr(args, "cmd", None)) if x)


def main(argv=None) -> int:
    parser = build_parser()
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    except _UsageError as exc:
        report = _report(exc.prog.removeprefix("curvata").strip() or "curvata", {"argv": argv}, None,
                         [f"usage: {exc}"])
        report["error"] = {"type": "UsageError", "message": str(exc)}
        sys.stdout.write(render(report))
        return BAD_INPUT
    try:
        report, code = args.func(args)
    except CurvataError as exc:
        report = _report(command_name(args), {"argv": argv}, None,
                         [f"{type(exc).__name__}: {exc}"])
        report["error"] = {"type": type(exc).__name__, "message": str(exc)}
        code = BAD_INPUT
    sys.stdout.write(render(report))
    return code


if __name__ == "__main__":
    raise SystemExit(main())
