"""
Defining graphs of Artin groups.

A :class:`DefiningGraph` is a finite simple graph with integer labels
``m >= 2`` on its edges; a missing edge stands for ``m = infinity``. This
module decides two-dimensionality and (2,2)-freeness, derives the reduced
labels ``m'`` in {2, 3, 4, 6} that define edge lengths ``1/m'`` on the Artin
complex, and decides conjugacy stability of standard parabolic subgroups
through odd-labelled path components.
"""

from __future__ import annotations

import dataclasses
import itertools
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    ConflictingLabel,
    HypothesisViolated,
    InternalInvariantViolation,
    LabelTooSmall,
    LoopEdge,
    ParseError,
    PreconditionFailed,
    UnknownEdge,
)
from .simplicial_core import Verdict

PRIME_VALUES = (2, 3, 4, 6)


class _Unconstrained:
    """Length of an edge type whose label is infinite; no triangle ever contains it."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "UNCONSTRAINED"


UNCONSTRAINED = _Unconstrained()


@dataclasses.dataclass(frozen=True)
class DefiningGraph:
    vertices: frozenset
    labels: Mapping[frozenset, int]

    def __post_init__(self):
        labels = {}
        for pair, m in dict(self.labels).items():
            pair = frozenset(pair)
            if len(pair) != 2:
                raise LoopEdge(f"loop at {sorted(pair)}")
            if not pair <= self.vertices:
                raise ValueError(f"edge {sorted(pair)} uses an undeclared vertex")
            if m < 2:
                raise LabelTooSmall(f"label {m} < 2 on {'-'.join(sorted(pair))}")
            labels[pair] = int(m)
        object.__setattr__(self, "vertices", frozenset(self.vertices))
        object.__setattr__(self, "labels", labels)

    @classmethod
    def from_edges(cls, edges: Iterable[tuple], vertices: Iterable[str] = ()) -> "DefiningGraph":
        vs = set(vertices)
        labels = {}
        for s, t, m in edges:
            vs.update((s, t))
            if m is not None:
                labels[frozenset((s, t))] = m
        return cls(frozenset(vs), labels)

    def label(self, s, t) -> int | None:
        """``m_st``, or ``None`` for infinity."""
        return self.labels.get(frozenset((s, t)))

    def neighbors(self, v) -> list:
        return sorted(w for w in self.vertices if w != v and frozenset((v, w)) in self.labels)

    def triangles(self) -> list[tuple]:
        out = []
        for r, s, t in itertools.combinations(sorted(self.vertices), 3):
            if all(frozenset(p) in self.labels for p in ((r, s), (s, t), (r, t))):
                out.append((r, s, t))
        return out

    def induced(self, subset) -> "DefiningGraph":
        sub = frozenset(subset)
        return DefiningGraph(sub, {p: m for p, m in self.labels.items() if p <= sub})

    def to_json(self):
        return {
            "vertices": sorted(self.vertices),
            "edges": [[*sorted(p), m] for p, m in sorted(self.labels.items(), key=lambda kv: sorted(kv[0]))],
        }


def parse_defining_graph(text: str) -> DefiningGraph:
    """Parse lines ``s t m`` (``m`` an integer >= 2 or ``inf``); ``#`` starts a comment."""
    vertices = set()
    labels = {}
    for n, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        words = line.split()
        if len(words) != 3:
            raise ParseError("expected 's t m'", n)
        s, t, m = words
        if s == t:
            raise LoopEdge(f"loop edge at {s}", n)
        vertices.update((s, t))
        if m.lower() in ("inf", "infinity", "∞"):
            value = None
        else:
            try:
                value = int(m)
            except ValueError:
                raise ParseError(f"label {m!r} is neither an integer nor 'inf'", n) from None
            if value < 2:
                raise LabelTooSmall(f"label {value} < 2", n)
        pair = frozenset((s, t))
        if pair in labels and labels[pair] != value:
            raise ConflictingLabel(f"edge {s}-{t} labelled both {labels[pair]} and {value}", n)
        labels[pair] = value
    return DefiningGraph(frozenset(vertices), {p: m for p, m in labels.items() if m is not None})


def _inv(m) -> Fraction:
    return Fraction(0) if m is None else Fraction(1, m)


def is_two_dimensional(g: DefiningGraph) -> Verdict:
    for tri in g.triangles():
        r, s, t = tri
        total = _inv(g.label(r, s)) + _inv(g.label(s, t)) + _inv(g.label(r, t))
        if total > 1:
            return Verdict(False, tri, f"1/m sum over triangle is {total} > 1")
    return Verdict(True)


def is_22_free(g: DefiningGraph) -> Verdict:
    for v in sorted(g.vertices):
        twos = [w for w in g.neighbors(v) if g.label(v, w) == 2]
        if len(twos) >= 2:
            return Verdict(False, v, f"{v} meets two edges labelled 2 (to {twos[0]} and {twos[1]})")
    return Verdict(True)


@dataclasses.dataclass(frozen=True)
class PrimeLabeling:
    """Reduced labels ``m'`` on the edges of a defining graph.

    ``repaired`` lists the edges whose value differs from the case rule
    because the case rule alone broke a triangle condition.
    """

    graph: DefiningGraph
    values: Mapping[frozenset, int]
    repaired: tuple = ()

    def __getitem__(self, pair) -> int:
        return self.values[frozenset(pair)]

    def to_json(self):
        return {"-".join(sorted(p)): m for p, m in sorted(self.values.items(), key=lambda kv: sorted(kv[0]))}


def prime_label_violations(g: DefiningGraph, values: Mapping[frozenset, int]) -> list[str]:
    out = []
    for p, m in sorted(g.labels.items(), key=lambda kv: sorted(kv[0])):
        mp = values.get(p)
        if mp not in PRIME_VALUES:
            out.append(f"{'-'.join(sorted(p))}: m' = {mp} not in {{2,3,4,6}}")
        elif mp > m:
            out.append(f"{'-'.join(sorted(p))}: m' = {mp} > m = {m}")
    for tri in g.triangles():
        out.extend(_triangle_violations(tri, values))
    return out


def _triangle_violations(tri, values) -> list[str]:
    r, s, t = tri
    pairs = [frozenset(p) for p in ((r, s), (s, t), (r, t))]
    ls = [Fraction(1, values[p]) for p in pairs]
    out = []
    if sum(ls) > 1:
        out.append(f"triangle {r}-{s}-{t}: 1/m' sum {sum(ls)} > 1")
    for i in range(3):
        if ls[i] > ls[(i + 1) % 3] + ls[(i + 2) % 3]:
            out.append(f"triangle {r}-{s}-{t}: triangle inequality fails at {'-'.join(sorted(pairs[i]))}")
    return out


def _case_rule(g: DefiningGraph, pair: frozenset) -> int:
    m = g.labels[pair]
    if m == 2:
        return 2
    if m == 3:
        return 3
    s, t = sorted(pair)
    touches_two = any(
        g.label(x, w) == 2 for x in (s, t) for w in g.neighbors(x) if frozenset((x, w)) != pair
    )
    if not touches_two:
        return 3
    for r in sorted(g.vertices - pair):
        others = sorted(x for x in (g.label(s, r), g.label(t, r)) if x is not None)
        if others == [2, 3]:
            return 6
    return 4


def _repair(g: DefiningGraph, start: dict) -> dict | None:
    """Backtracking search for a valid labelling, preferring the case-rule value per edge."""
    edges = sorted(g.labels, key=sorted)
    tris_of = {e: [] for e in edges}
    for tri in g.triangles():
        for p in itertools.combinations(tri, 2):
            tris_of[frozenset(p)].append(tri)
    values = {}

    def consistent(e):
        for tri in tris_of[e]:
            if all(frozenset(p) in values for p in itertools.combinations(tri, 2)):
                if _triangle_violations(tri, values):
                    return False
        return True

    def go(i):
        if i == len(edges):
            return True
        e = edges[i]
        options = [start[e]] + [v for v in PRIME_VALUES if v != start[e]]
        for v in options:
            if v > g.labels[e]:
                continue
            values[e] = v
            if consistent(e) and go(i + 1):
                return True
        del values[e]
        return False

    return dict(values) if go(0) else None


def derive_prime_labels(g: DefiningGraph) -> PrimeLabeling:
    """Reduced labels ``m'`` for a two-dimensional (2,2)-free defining graph.

    Edge by edge, in this priority: ``m = 2 -> 2``; ``m = 3 -> 3``; ``m > 3``
    with no 2-labelled edge sharing a vertex ``-> 3``; ``m > 3`` closing a
    triangle whose other labels are 2 and 3 ``-> 6``; otherwise ``4``. The
    result is re-verified. On some graphs with several triangles the case
    rule breaks a triangle inequality; a labelling that satisfies every
    condition is then found by search, keeping case-rule values wherever
    possible, and the changed edges are recorded in ``repaired``.
    """
    for check in (is_two_dimensional(g), is_22_free(g)):
        if not check:
            raise PreconditionFailed(check.reason)
    values = {p: _case_rule(g, p) for p in g.labels}
    repaired = ()
    if prime_label_violations(g, values):
        fixed = _repair(g, values)
        if fixed is None:
            raise InternalInvariantViolation(
                "no labelling in {2,3,4,6} satisfies the triangle conditions: "
                + "; ".join(prime_label_violations(g, values)))
        repaired = tuple(sorted(("-".join(sorted(p)) for p in fixed if fixed[p] != values[p])))
        values = fixed
    bad = prime_label_violations(g, values)
    if bad:
        raise InternalInvariantViolation("; ".join(bad))
    return PrimeLabeling(g, values, repaired)


def edge_type_length(pl: PrimeLabeling, s, t):
    """``1/m'_st`` for the edge type missing ``s`` and ``t``; ``UNCONSTRAINED`` when ``m_st`` is infinite."""
    g = pl.graph
    if s == t or s not in g.vertices or t not in g.vertices:
        raise UnknownEdge(f"{s}-{t} is not a pair of distinct generators")
    pair = frozenset((s, t))
    if pair not in pl.values:
        return UNCONSTRAINED
    return Fraction(1, pl.values[pair])


class UnionFind:
    def __init__(self, items=()):
        self.parent = {x: x for x in items}

    def find(self, x):
        root = x
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            # smaller identifier becomes the root so components are reproducible
            if rb < ra:
                ra, rb = rb, ra
            self.parent[rb] = ra

    def same(self, a, b) -> bool:
        return self.find(a) == self.find(b)


def odd_components(g: DefiningGraph, subset=None) -> UnionFind:
    vs = g.vertices if subset is None else frozenset(subset)
    uf = UnionFind(sorted(vs))
    for p, m in g.labels.items():
        if m % 2 == 1 and p <= vs:
            uf.union(*sorted(p))
    return uf


def conjugacy_stable(g: DefiningGraph, subset: Iterable[str]) -> Verdict:
    """Whether the standard parabolic subgroup on ``subset`` is conjugacy stable.

    It is not stable exactly when two of its generators are joined by an
    odd-labelled path in the whole graph but by none inside the full
    subgraph on ``subset``. The witness is the lexicographically least such
    pair.
    """
    sub = frozenset(subset)
    if not sub <= g.vertices:
        raise PreconditionFailed(f"subset contains unknown vertices {sorted(sub - g.vertices)}")
    for name, check in (("two-dimensional", is_two_dimensional(g)), ("(2,2)-free", is_22_free(g))):
        if not check:
            raise HypothesisViolated(f"graph is not {name}: {check.reason}")
    whole = odd_components(g)
    inner = odd_components(g, sub)
    for s, t in itertools.combinations(sorted(sub), 2):
        if whole.same(s, t) and not inner.same(s, t):
            return Verdict(False, (s, t), f"{s} and {t} are joined by an odd path only outside the subset")
    return Verdict(True)
