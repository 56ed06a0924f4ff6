"""Line-based text formats for length complexes and disk diagrams.

Complex file::

    # comment
    default_length 1/3
    simplex a b c
    length a b 1/2

Diagram file: the same directives split into ``[disk]`` and ``[target]``
sections, plus ``map <disk-vertex> <target-vertex>`` lines and an optional
``cycle v1 v2 ...`` line naming the target cycle to be filled.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import DuplicateVertexInSimplex, EmptyInput, ParseError
from .simplicial_core import (
    LengthComplex,
    SimplicialComplex,
    format_rational,
    parse_rational,
)


def _lines(text: str):
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield n, line.split()


class _ComplexBuilder:
    def __init__(self):
        self.simplices = []
        self.lengths = {}
        self.default = None

    def feed(self, n, words):
        head, args = words[0], words[1:]
        if head == "simplex":
            if not args:
                raise ParseError("simplex needs at least one vertex", n)
            if len(set(args)) != len(args):
                raise DuplicateVertexInSimplex(f"repeated vertex in simplex {args}", n)
            self.simplices.append(args)
        elif head == "length":
            if len(args) != 3:
                raise ParseError("usage: length u v p/q", n)
            u, v, q = args
            if u == v:
                raise ParseError("length on a loop", n)
            e = frozenset((u, v))
            value = parse_rational(q, n)
            if e in self.lengths and self.lengths[e][0] != value:
                raise ParseError(f"conflicting lengths for {u}-{v}", n)
            self.lengths[e] = (value, n)
        elif head == "default_length":
            if len(args) != 1:
                raise ParseError("usage: default_length p/q", n)
            self.default = parse_rational(args[0], n)
        else:
            return False
        return True

    def build(self, require_lengths=True):
        if not self.simplices:
            raise EmptyInput("no simplex lines")
        cx = SimplicialComplex.from_simplices(self.simplices)
        edges = set(cx.edges)
        for e, (_, n) in self.lengths.items():
            if e not in edges:
                raise ParseError(f"length for {'-'.join(sorted(e))}, which is not an edge", n)
        if not require_lengths and not self.lengths and self.default is None:
            return cx
        lengths = {}
        for e in cx.edges:
            if e in self.lengths:
                lengths[e] = self.lengths[e][0]
            elif self.default is not None:
                lengths[e] = self.default
            else:
                raise ParseError(f"edge {'-'.join(sorted(e))} has no length and no default_length is set")
        return LengthComplex(cx, lengths)


def parse_complex(text: str) -> LengthComplex:
    b = _ComplexBuilder()
    for n, words in _lines(text):
        if not b.feed(n, words):
            raise ParseError(f"unknown directive {words[0]!r}", n)
    return b.build()


def format_complex(X: LengthComplex, default: Fraction | None = None) -> str:
    out = []
    if default is not None:
        out.append(f"default_length {format_rational(default)}")
    for s in X.complex.maximal_simplices:
        out.append("simplex " + " ".join(sorted(s)))
    for e in X.complex.edges:
        if default is None or X.lengths[e] != default:
            u, v = sorted(e)
            out.append(f"length {u} {v} {format_rational(X.lengths[e])}")
    return "\n".join(out) + "\n"


def parse_diagram(text: str):
    """Return ``(disk, target, vertex_map, cycle_or_None)``."""
    disk, target = _ComplexBuilder(), _ComplexBuilder()
    section = None
    vmap = {}
    cycle = None
    for n, words in _lines(text):
        head = words[0]
        if head in ("[disk]", "[target]", "[map]"):
            section = head
            continue
        if head == "map":
            if len(words) != 3:
                raise ParseError("usage: map disk_vertex target_vertex", n)
            if words[1] in vmap and vmap[words[1]] != words[2]:
                raise ParseError(f"disk vertex {words[1]} mapped twice", n)
            vmap[words[1]] = words[2]
            continue
        if head == "cycle":
            if len(words) < 4:
                raise ParseError("a cycle needs at least three vertices", n)
            cycle = tuple(words[1:])
            continue
        builder = {"[disk]": disk, "[target]": target}.get(section)
        if builder is None:
            raise ParseError(f"directive {head!r} outside a [disk] or [target] section", n)
        if not builder.feed(n, words):
            raise ParseError(f"unknown directive {head!r}", n)
    disk_cx = disk.build(require_lengths=False)
    if isinstance(disk_cx, LengthComplex):
        disk_cx = disk_cx.complex
    return disk_cx, target.build(), vmap, cycle


def format_diagram(disk: SimplicialComplex, target: LengthComplex, vertex_map, cycle=None) -> str:
    out = ["[disk]"]
    out += ["simplex " + " ".join(sorted(s)) for s in disk.maximal_simplices]
    out.append("[target]")
    out += format_complex(target).splitlines()
    out.append("[map]")
    out += [f"map {d} {vertex_map[d]}" for d in sorted(vertex_map)]
    if cycle is not None:
        out.append("cycle " + " ".join(cycle))
    return "\n".join(out) + "\n"
