"""
Finite abstract simplicial complexes with exact rational edge lengths.

A complex is stored as the downward-closed set of its simplices, each a
``frozenset`` of vertex identifiers (opaque strings). Every tie-break in this
module uses the lexicographic order of those strings, so all results are
reproducible.

A :class:`LengthComplex` pairs a complex with a ``Fraction`` per edge. The
length-function conditions (edges in ``[0, 1/2]``, triangle sums at most 1,
triangle inequality) are *checked* on demand rather than enforced at
construction, because reporting violations is itself one of the supported
operations.
"""

from __future__ import annotations

import dataclasses
import heapq
import itertools
import math
import os
from fractions import Fraction
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    Disconnected,
    DuplicateVertexInSimplex,
    EmptyInput,
    InvalidLengthFunction,
    ParseError,
    ResourceLimit,
    SimplexNotFound,
    VertexNotFound,
    ZeroLengthEdge,
)

Vertex = str
Simplex = frozenset

HALF = Fraction(1, 2)
ONE = Fraction(1)
TWO = Fraction(2)


def parse_rational(text: str, line: int | None = None) -> Fraction:
    """Parse ``p/q`` or an integer; decimals are refused to keep inputs exact."""
    if "." in text or "e" in text.lower():
        raise ParseError(f"expected an exact rational p/q, got {text!r}", line)
    try:
        value = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"bad rational {text!r}", line) from None
    return value


def format_rational(q: Fraction | int) -> str:
    q = Fraction(q)
    return f"{q.numerator}/{q.denominator}"


def resource_limit() -> int | None:
    """Global work cap taken from ``CURVATA_RESOURCE_LIMIT`` (unset means no cap)."""
    raw = os.environ.get("CURVATA_RESOURCE_LIMIT")
    if not raw:
        return None
    return int(raw)


@dataclasses.dataclass(frozen=True)
class Verdict:
    """A boolean answer with an optional witness explaining a negative one."""

    ok: bool
    witness: object = None
    reason: str = ""
    detail: object = None

    def __bool__(self):
        return self.ok


def _key(simplex) -> tuple:
    return (len(simplex), tuple(sorted(simplex)))


@dataclasses.dataclass(frozen=True)
class SimplicialComplex:
    simplices: frozenset

    def __post_init__(self):
        for s in self.simplices:
            if not s:
                raise EmptyInput("the empty set is not a simplex")
            if len(s) > 1:
                for face in itertools.combinations(s, len(s) - 1):
                    if frozenset(face) not in self.simplices:
                        raise ValueError(f"complex is not downward closed: missing face of {sorted(s)}")

    @classmethod
    def from_simplices(cls, maximal: Iterable[Iterable[Vertex]]) -> "SimplicialComplex":
        closure = set()
        for s in maximal:
            s = list(s)
            if len(set(s)) != len(s):
                raise DuplicateVertexInSimplex(f"repeated vertex in simplex {s}")
            if not s:
                raise EmptyInput("empty simplex")
            s = frozenset(s)
            if s in closure:
                continue
            for k in range(1, len(s) + 1):
                closure.update(frozenset(f) for f in itertools.combinations(sorted(s), k))
        return cls(frozenset(closure))

    def __contains__(self, simplex) -> bool:
        return frozenset(simplex) in self.simplices

    def __len__(self):
        return len(self.simplices)

    @cached_property
    def _by_dim(self) -> dict[int, tuple]:
        out: dict[int, list] = {}
        for s in self.simplices:
            out.setdefault(len(s) - 1, []).append(s)
        return {d: tuple(sorted(v, key=_key)) for d, v in out.items()}

    def faces(self, dim: int) -> tuple:
        """All simplices of the given dimension, sorted lexicographically."""
        return self._by_dim.get(dim, ())

    @property
    def vertices(self) -> tuple[Vertex, ...]:
        return tuple(sorted(next(iter(s)) for s in self.faces(0)))

    @property
    def edges(self) -> tuple:
        return self.faces(1)

    @property
    def triangles(self) -> tuple:
        return self.faces(2)

    @property
    def dimension(self) -> int:
        return max(self._by_dim, default=-1)

    @cached_property
    def adjacency(self) -> dict[Vertex, frozenset]:
        adj: dict[Vertex, set] = {v: set() for v in self.vertices}
        for e in self.edges:
            a, b = e
            adj[a].add(b)
            adj[b].add(a)
        return {v: frozenset(n) for v, n in adj.items()}

    def neighbors(self, v: Vertex) -> frozenset:
        try:
            return self.adjacency[v]
        except KeyError:
            raise VertexNotFound(f"vertex {v!r} not in complex") from None

    @cached_property
    def maximal_simplices(self) -> tuple:
        cofaces = set()
        for s in self.simplices:
            if len(s) > 1:
                cofaces.update(frozenset(f) for f in itertools.combinations(s, len(s) - 1))
        return tuple(sorted((s for s in self.simplices if s not in cofaces), key=_key))

    def link(self, simplex) -> "SimplicialComplex":
        s = frozenset(simplex)
        if s not in self.simplices:
            raise SimplexNotFound(f"simplex {sorted(s)} not in complex")
        return SimplicialComplex(frozenset(
            t for t in self.simplices if not (t & s) and (t | s) in self.simplices
        ))

    def star_triangles(self, v: Vertex) -> tuple:
        return tuple(t for t in self.triangles if v in t)

    def induced(self, vertices: Iterable[Vertex]) -> "SimplicialComplex":
        """The full subcomplex spanned by ``vertices``."""
        vs = frozenset(vertices)
        return SimplicialComplex(frozenset(s for s in self.simplices if s <= vs))

    def is_flag(self) -> Verdict:
        return is_flag(self)

    def euler_characteristic(self) -> int:
        return euler_characteristic(self)


def build_complex(maximal_simplices: Sequence[Iterable[Vertex]]) -> SimplicialComplex:
    if not maximal_simplices:
        raise EmptyInput("no simplices given")
    return SimplicialComplex.from_simplices(maximal_simplices)


def link(X: SimplicialComplex, s) -> SimplicialComplex:
    return X.link(s)


def euler_characteristic(X: SimplicialComplex) -> int:
    return sum((-1) ** (len(s) - 1) for s in X.simplices)


def is_flag(X: SimplicialComplex) -> Verdict:
    """Check that every clique of the 1-skeleton spans a simplex.

    Cliques are grown level by level from simplices one dimension lower, so
    the first non-simplex found has all of its proper faces in ``X``: it is a
    minimal witness.
    """
    adj = X.adjacency
    k = 3
    while True:
        lower = X.faces(k - 2)
        if not lower:
            return Verdict(True)
        for s in lower:
            top = max(s)
            common = set.intersection(*(set(adj[v]) for v in s))
            for w in sorted(x for x in common if x > top):
                clique = s | {w}
                if clique in X.simplices:
                    continue
                if all(frozenset(f) in X.simplices for f in itertools.combinations(clique, k - 1)):
                    return Verdict(False, clique, "clique does not span a simplex")
        k += 1


@dataclasses.dataclass(frozen=True)
class Cycle:
    """An embedded cycle given by its cyclic vertex sequence."""

    vertices: tuple

    def __post_init__(self):
        if len(self.vertices) < 3 or len(set(self.vertices)) != len(self.vertices):
            raise ValueError(f"not an embedded cycle: {self.vertices}")

    @classmethod
    def canonical(cls, seq: Sequence[Vertex]) -> "Cycle":
        seq = list(seq)
        i = seq.index(min(seq))
        seq = seq[i:] + seq[:i]
        if seq[-1] < seq[1]:
            seq = [seq[0]] + seq[:0:-1]
        return cls(tuple(seq))

    def __len__(self):
        return len(self.vertices)

    def edges(self) -> list[frozenset]:
        vs = self.vertices
        return [frozenset((vs[i], vs[(i + 1) % len(vs)])) for i in range(len(vs))]

    def length(self, X: "LengthComplex") -> Fraction:
        return sum((X.length(e) for e in self.edges()), Fraction(0))

    def same_as(self, other: "Cycle") -> bool:
        return Cycle.canonical(self.vertices) == Cycle.canonical(other.vertices)


@dataclasses.dataclass(frozen=True)
class Path:
    vertices: tuple

    def __len__(self):
        return max(len(self.vertices) - 1, 0)

    def edges(self) -> list[frozenset]:
        vs = self.vertices
        return [frozenset(p) for p in zip(vs, vs[1:])]

    def length(self, X: "LengthComplex") -> Fraction:
        return sum((X.length(e) for e in self.edges()), Fraction(0))


@dataclasses.dataclass(frozen=True)
class LengthViolation:
    kind: str  # "edge-range" | "triangle-sum" | "triangle-inequality"
    simplex: tuple
    detail: str

    def __str__(self):
        return f"{self.kind} at {'-'.join(self.simplex)}: {self.detail}"


@dataclasses.dataclass(frozen=True)
class LengthComplex:
    complex: SimplicialComplex
    lengths: Mapping[frozenset, Fraction]

    def __post_init__(self):
        lengths = {frozenset(e): Fraction(v) for e, v in self.lengths.items()}
        edges = set(self.complex.edges)
        missing = edges - lengths.keys()
        if missing:
            e = min(missing, key=_key)
            raise ValueError(f"edge {'-'.join(sorted(e))} has no length")
        extra = lengths.keys() - edges
        if extra:
            e = min(extra, key=_key)
            raise SimplexNotFound(f"length given for non-edge {'-'.join(sorted(e))}")
        object.__setattr__(self, "lengths", lengths)

    @classmethod
    def checked(cls, complex: SimplicialComplex, lengths) -> "LengthComplex":
        X = cls(complex, lengths)
        bad = X.violations()
        if bad:
            raise InvalidLengthFunction(bad)
        return X

    @classmethod
    def constant(cls, complex: SimplicialComplex, value) -> "LengthComplex":
        return cls(complex, {e: Fraction(value) for e in complex.edges})

    def length(self, *edge) -> Fraction:
        e = frozenset(edge[0]) if len(edge) == 1 else frozenset(edge)
        try:
            return self.lengths[e]
        except KeyError:
            raise SimplexNotFound(f"no edge {'-'.join(sorted(e))}") from None

    @property
    def vertices(self):
        return self.complex.vertices

    def restrict(self, sub: SimplicialComplex) -> "LengthComplex":
        return LengthComplex(sub, {e: self.lengths[e] for e in sub.edges})

    def link(self, simplex) -> "LengthComplex":
        return self.restrict(self.complex.link(simplex))

    def induced(self, vertices) -> "LengthComplex":
        return self.restrict(self.complex.induced(vertices))

    def violations(self) -> list[LengthViolation]:
        out = []
        for e in self.complex.edges:
            l = self.lengths[e]
            if not (0 <= l <= HALF):
                out.append(LengthViolation("edge-range", tuple(sorted(e)),
                                           f"length {format_rational(l)} outside [0, 1/2]"))
        for t in self.complex.triangles:
            ls = [self.lengths[frozenset(p)] for p in itertools.combinations(sorted(t), 2)]
            total = sum(ls)
            if total > 1:
                out.append(LengthViolation("triangle-sum", tuple(sorted(t)),
                                           f"edge sum {format_rational(total)} > 1"))
            for i in range(3):
                if ls[i] > total - ls[i]:
                    out.append(LengthViolation("triangle-inequality", tuple(sorted(t)),
                                               f"{format_rational(ls[i])} > {format_rational(total - ls[i])}"))
                    break
        return out

    @property
    def min_length(self) -> Fraction | None:
        return min(self.lengths.values(), default=None)


def _as_length_complex(X) -> LengthComplex:
    if isinstance(X, LengthComplex):
        return X
    return LengthComplex.constant(X, 0)


def enumerate_full_cycles(X: LengthComplex | SimplicialComplex, max_edges: int, *,
                          below: Fraction | None = None,
                          budget: int | None = None) -> list[Cycle]:
    """Full cycles with at most ``max_edges`` edges, each reported once.

    A cycle on four or more vertices is full exactly when it is an induced
    cycle of the 1-skeleton; a 3-cycle is full when it bounds no 2-simplex.
    With ``below`` set, only cycles shorter than that are reported, and the
    search prunes partial paths that already reach it (lengths are
    nonnegative). ``budget`` caps the number of search steps.
    """
    if max_edges < 3:
        raise ValueError("max_edges must be at least 3")
    lc = _as_length_complex(X)
    cx = lc.complex
    adj = cx.adjacency
    budget = resource_limit() if budget is None else budget
    steps = 0
    found: list[Cycle] = []

    def short_enough(total):
        return below is None or total < below

    # 3-cycles
    for e in cx.edges:
        a, b = sorted(e)
        for c in sorted(adj[a] & adj[b]):
            if c > b and frozenset((a, b, c)) not in cx.simplices:
                total = lc.length(a, b) + lc.length(b, c) + lc.length(a, c)
                if short_enough(total):
                    found.append(Cycle((a, b, c)))

    # induced cycles on >= 4 vertices, rooted at their least vertex
    for root in cx.vertices:
        higher = sorted(w for w in adj[root] if w > root)
        for first in higher:
            path = [root, first]
            on_path = {root, first}
            total = lc.length(root, first)
            stack = [iter(sorted(w for w in adj[first] if w > root))]
            while stack:
                steps += 1
                if budget is not None and steps > budget:
                    raise ResourceLimit(f"cycle enumeration exceeded {budget} steps")
                nxt = next(stack[-1], None)
                if nxt is None:
                    stack.pop()
                    last = path.pop()
                    on_path.discard(last)
                    if path:
                        total -= lc.length(last, path[-1])
                    continue
                if nxt in on_path:
                    continue
                last = path[-1]
                # no chord to interior path vertices (root handled below)
                if any(p in adj[nxt] for p in path[1:-1]):
                    continue
                step = lc.length(last, nxt)
                if not short_enough(total + step):
                    continue
                if root in adj[nxt]:
                    if len(path) >= 3:
                        closing = total + step + lc.length(nxt, root)
                        if nxt > first and short_enough(closing):
                            found.append(Cycle(tuple(path) + (nxt,)))
                    continue
                if len(path) + 1 >= max_edges:
                    continue
                path.append(nxt)
                on_path.add(nxt)
                total += step
                stack.append(iter(sorted(w for w in adj[nxt] if w > root)))
    found = [c for c in found if len(c) <= max_edges]
    return sorted(found, key=lambda c: (len(c), c.vertices))


def is_large(X: LengthComplex, max_edges: int | None = None, *, budget: int | None = None) -> Verdict:
    """Flag, and every full cycle has length at least 2.

    A cycle with ``n`` edges has length at least ``n * min_length``, so only
    cycles with fewer than ``ceil(2 / min_length)`` edges need to be searched.
    When some edge has length 0 that bound does not exist and ``max_edges``
    must be supplied.
    """
    flag = is_flag(X.complex)
    if not flag:
        return Verdict(False, flag.witness, "not flag")
    lam = X.min_length
    if lam is None:
        return Verdict(True)
    if lam > 0:
        bound = math.ceil(TWO / lam) - 1
    elif max_edges is None:
        e = min((e for e, l in X.lengths.items() if l == 0), key=_key)
        raise ZeroLengthEdge(f"edge {'-'.join(sorted(e))} has length 0; pass max_edges to bound the search")
    else:
        bound = max_edges
    if bound < 3:
        return Verdict(True)
    short = enumerate_full_cycles(X, bound, below=TWO, budget=budget)
    if short:
        c = short[0]
        return Verdict(False, c, f"full cycle of length {format_rational(c.length(X))} < 2")
    return Verdict(True)


def is_locally_large(X: LengthComplex, max_edges: int | None = None, *, budget: int | None = None) -> Verdict:
    for v in X.vertices:
        r = is_large(X.link({v}), max_edges, budget=budget)
        if not r:
            return Verdict(False, v, f"link of {v} is not large: {r.reason}", r)
    return Verdict(True)


def geodesic_distance(X: LengthComplex, u: Vertex, v: Vertex) -> tuple[Fraction, Path]:
    """Exact weighted shortest path; ties go to the lexicographically least vertex sequence."""
    adj = X.complex.adjacency
    for w in (u, v):
        if w not in adj:
            raise VertexNotFound(f"vertex {w!r} not in complex")
    heap = [(Fraction(0), (u,))]
    settled = set()
    while heap:
        d, path = heapq.heappop(heap)
        w = path[-1]
        if w in settled:
            continue
        settled.add(w)
        if w == v:
            return d, Path(path)
        for x in adj[w]:
            if x not in settled:
                heapq.heappush(heap, (d + X.length(w, x), path + (x,)))
    raise Disconnected(f"{u} and {v} lie in different components")
