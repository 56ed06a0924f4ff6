"""
Dihedral Artin groups and balls in their rank-2 Artin complex.

Words use ``s``, ``t`` for the generators and ``S``, ``T`` for their
inverses. For finite ``m`` every element has a unique Garside left-greedy
normal form ``Delta^p a_1 ... a_k``: each ``a_i`` is an alternating word of
length ``1..m-1`` and consecutive factors satisfy ``first(a_{i+1}) ==
last(a_i)`` (otherwise a letter could move left). ``m = None`` stands for
``m = infinity``, the free group on ``s, t``, where normal forms are freely
reduced words.

The Artin complex of ``A = <s, t>`` is the bipartite graph whose vertices
are the cosets ``g<s>`` and ``g<t>`` and whose edges are group elements
``g``, joining ``g<s>`` to ``g<t>``.
"""

from __future__ import annotations

import dataclasses
from collections import deque
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import InputError, MixedPresentation, PreconditionFailed, RadiusTooSmall, ResourceLimit
from .simplicial_core import LengthComplex, SimplicialComplex, resource_limit

LETTERS = ("s", "S", "t", "T")  # BFS order s < s^-1 < t < t^-1
_INVERSE = {"s": "S", "S": "s", "t": "T", "T": "t"}
_OTHER = {"s": "t", "t": "s"}


def _check_m(m):
    if m is not None and (not isinstance(m, int) or m < 2):
        raise InputError(f"m must be an integer >= 2 or None (infinity), got {m!r}")


def alternating(first: str, length: int) -> str:
    """``prod(first, other; length)``."""
    out = []
    x = first
    for _ in range(length):
        out.append(x)
        x = _OTHER[x]
    return "".join(out)


def _parse_word(word) -> list[str]:
    if isinstance(word, str):
        letters = [c for c in word if not c.isspace() and c not in "1e"]
    else:
        letters = list(word)
    for c in letters:
        if c not in _INVERSE:
            raise InputError(f"unknown letter {c!r}; use s, t, S (s^-1), T (t^-1)")
    return letters


@dataclasses.dataclass(frozen=True)
class DihedralElement:
    m: int | None
    infimum: int = 0
    factors: tuple[str, ...] = ()

    @classmethod
    def identity(cls, m) -> "DihedralElement":
        _check_m(m)
        return cls(m)

    @property
    def delta(self) -> str:
        return alternating("s", self.m)

    def word(self) -> str:
        """A word representing this element (the normal form written out)."""
        if self.m is None:
            return "".join(self.factors)
        d = self.delta
        if self.infimum >= 0:
            head = d * self.infimum
        else:
            head = "".join(_INVERSE[c] for c in reversed(d)) * (-self.infimum)
        return head + "".join(self.factors)

    def __str__(self):
        return self.word() or "1"

    def length_bound(self) -> int:
        return len(self.word())

    def _right_letter(self, x: str) -> "DihedralElement":
        if self.m is None:
            if self.factors and self.factors[-1] == _INVERSE[x]:
                return DihedralElement(None, 0, self.factors[:-1])
            return DihedralElement(None, 0, self.factors + (x,))
        if x.isupper():
            return self._right_inverse(x.lower())
        return self._right_positive(x)

    def _right_positive(self, x: str) -> "DihedralElement":
        m, p, fs = self.m, self.infimum, list(self.factors)
        if not fs or fs[-1][-1] == x:
            return DihedralElement(m, p, tuple(fs) + (x,))
        last = fs[-1] + x
        if len(last) < m:
            fs[-1] = last
            return DihedralElement(m, p, tuple(fs))
        # last factor became Delta; move it to the front past the others
        return DihedralElement(m, p + 1, tuple(_tau(m, f) for f in fs[:-1]))

    def _right_inverse(self, x: str) -> "DihedralElement":
        m, p, fs = self.m, self.infimum, list(self.factors)
        if fs and fs[-1][-1] == x:
            fs[-1] = fs[-1][:-1]
            if not fs[-1]:
                fs.pop()
            return DihedralElement(m, p, tuple(fs))
        # x^-1 = Delta^-1 w with w x = Delta, and g Delta^-1 = Delta^(p-1) tau(factors)
        w = alternating(x if m % 2 == 1 else _OTHER[x], m)[:-1]
        g = DihedralElement(m, p - 1, tuple(_tau(m, f) for f in fs))
        for c in w:
            g = g._right_positive(c)
        return g

    def times_word(self, word) -> "DihedralElement":
        g = self
        for c in _parse_word(word):
            g = g._right_letter(c)
        return g

    def __mul__(self, other: "DihedralElement") -> "DihedralElement":
        if not isinstance(other, DihedralElement):
            return NotImplemented
        if other.m != self.m:
            raise MixedPresentation(f"cannot multiply elements of A_{self.m} and A_{other.m}")
        return self.times_word(other.word())

    def inverse(self) -> "DihedralElement":
        inv = "".join(_INVERSE[c] for c in reversed(self.word()))
        return DihedralElement.identity(self.m).times_word(inv)

    def __pow__(self, k: int) -> "DihedralElement":
        base = self if k >= 0 else self.inverse()
        g = DihedralElement.identity(self.m)
        for _ in range(abs(k)):
            g = g * base
        return g

    def to_json(self):
        return {"m": "inf" if self.m is None else self.m, "infimum": self.infimum,
                "factors": list(self.factors), "word": str(self)}


def _tau(m: int, f: str) -> str:
    """Conjugation by Delta: swaps s and t when m is odd, trivial when m is even."""
    return f if m % 2 == 0 else "".join(_OTHER[c] for c in f)


def normal_form(m: int | None, word: Sequence[str] | str) -> DihedralElement:
    _check_m(m)
    return DihedralElement.identity(m).times_word(word)


def generator(m, x: str, k: int = 1) -> DihedralElement:
    letter = x if k >= 0 else _INVERSE[x]
    return normal_form(m, letter * abs(k))


def elements_equal(a: DihedralElement, b: DihedralElement) -> bool:
    if a.m != b.m:
        raise MixedPresentation(f"elements of A_{a.m} and A_{b.m} cannot be compared")
    return a == b


def coset_equal(m, g: DihedralElement, h: DihedralElement, gen: str, max_power: int) -> bool:
    """Whether ``g = h x^k`` for ``x = gen`` and some ``|k| <= max_power``."""
    if gen not in ("s", "t"):
        raise InputError(f"generator must be s or t, got {gen!r}")
    d = h.inverse() * g
    if d.m is None:
        return len(set(d.factors)) <= 1 and d.factors[:1] in ((), (gen,), (_INVERSE[gen],)) \
            and len(d.factors) <= max_power
    return any(d == generator(m, gen, k) for k in range(-max_power, max_power + 1))


@dataclasses.dataclass(frozen=True)
class CosetGraphBall:
    """Finite piece of the rank-2 Artin complex.

    Elements are named by the first word reaching them in the search
    (``"1"`` for the identity). ``edges`` maps such a name ``g`` to its
    vertex ids ``("s:<rep>", "t:<rep>")``, where ``rep`` names the first
    element found in that coset; ``elements`` maps names to elements.
    """

    m: int | None
    radius: int
    vertices: tuple[str, ...]
    edges: dict
    elements: dict

    @property
    def adjacency(self) -> dict[str, set]:
        adj = {v: set() for v in self.vertices}
        for a, b in self.edges.values():
            adj[a].add(b)
            adj[b].add(a)
        return adj

    def is_bipartite_by_type(self) -> bool:
        return all(a[0] != b[0] for a, b in self.edges.values())

    def as_complex(self) -> SimplicialComplex:
        return SimplicialComplex.from_simplices(list(self.edges.values()) + [(v,) for v in self.vertices])

    def as_length_complex(self, length: Fraction | None = None) -> LengthComplex:
        if length is None:
            if self.m is None:
                raise PreconditionFailed("no edge length is defined for m = inf")
            length = Fraction(1, self.m)
        return LengthComplex.constant(self.as_complex(), length)

    def to_json(self):
        return {
            "m": "inf" if self.m is None else self.m,
            "radius": self.radius,
            "vertex_count": len(self.vertices),
            "edge_count": len(self.edges),
        }


def build_ball(m: int | None, radius: int, max_vertices: int | None = None) -> CosetGraphBall:
    """All elements of word length at most ``radius`` and the cosets they touch.

    Cosets are identified with exact tests ``h^-1 g = x^k``. Two elements of
    length at most ``radius`` can differ by ``x^k`` with ``|k|`` up to
    ``2 * radius``, so that is the power bound used.
    """
    _check_m(m)
    if radius < 1:
        raise InputError("radius must be at least 1")
    if max_vertices is None:
        max_vertices = resource_limit()
    max_power = 2 * radius
    one = DihedralElement.identity(m)
    spelled = {one: ""}  # first word reaching each element, shortlex in LETTERS order
    order = [one]
    todo = deque([one])
    while todo:
        g = todo.popleft()
        if len(spelled[g]) == radius:
            continue
        for c in LETTERS:
            h = g.times_word(c)
            if h not in spelled:
                spelled[h] = spelled[g] + c
                order.append(h)
                todo.append(h)

    # each vertex registers every element of its window rep * x^k, |k| <= max_power
    window = {x: [generator(m, x, k) for k in range(-max_power, max_power + 1)] for x in ("s", "t")}
    lookup: dict[tuple, str] = {}
    vertices: list[str] = []
    edges: dict[str, tuple] = {}
    for g in order:
        name = spelled[g] or "1"
        ends = []
        for x in ("s", "t"):
            vid = lookup.get((x, g))
            if vid is None:
                vid = f"{x}:{name}"
                vertices.append(vid)
                if max_vertices is not None and len(vertices) > max_vertices:
                    raise ResourceLimit(f"ball has more than {max_vertices} vertices")
                for p in window[x]:
                    lookup.setdefault((x, g * p), vid)
            ends.append(vid)
        edges[name] = tuple(ends)
    return CosetGraphBall(m, radius, tuple(vertices), edges, {w or "1": g for g, w in spelled.items()})


def shortest_cycle(adj: dict) -> tuple[int | None, list]:
    """Girth of a simple graph by breadth-first search from every vertex, with a witness cycle."""
    best, witness = None, []
    for root in sorted(adj):
        dist, parent = {root: 0}, {root: None}
        q = deque([root])
        while q:
            u = q.popleft()
            if best is not None and 2 * dist[u] >= best:
                break
            for w in sorted(adj[u]):
                if w not in dist:
                    dist[w] = dist[u] + 1
                    parent[w] = u
                    q.append(w)
                elif parent[u] != w:
                    n = dist[u] + dist[w] + 1
                    if best is None or n < best:
                        cyc = _close(parent, u, w)
                        if cyc is not None:
                            best, witness = len(cyc), cyc
    return best, witness


def _close(parent, u, w):
    pu, pw = [u], [w]
    while parent[pu[-1]] is not None:
        pu.append(parent[pu[-1]])
    while parent[pw[-1]] is not None:
        pw.append(parent[pw[-1]])
    common = set(pu) & set(pw)
    iu = next(i for i, x in enumerate(pu) if x in common)
    iw = pw.index(pu[iu])
    cyc = pu[:iu + 1] + list(reversed(pw[:iw]))
    return cyc if len(cyc) >= 3 and len(set(cyc)) == len(cyc) else None


@dataclasses.dataclass(frozen=True)
class GirthReport:
    m: int | None
    radius: int
    shortest_cycle: int | None
    bound: int | None
    passed: bool
    found_exact: bool
    witness: tuple
    min_cycle_length: Fraction | None

    def to_json(self):
        from .simplicial_core import format_rational
        return {
            "m": "inf" if self.m is None else self.m,
            "radius": self.radius,
            "shortest_cycle": self.shortest_cycle,
            "bound": self.bound,
            "pass": self.passed,
            "found_exact": self.found_exact,
            "witness": list(self.witness),
            "min_cycle_length": None if self.min_cycle_length is None else format_rational(self.min_cycle_length),
        }


def girth_check(ball: CosetGraphBall, m: int | None = None, prime_label: int | None = None) -> GirthReport:
    """Shortest cycle of the ball against the lower bound ``2m``.

    With ``prime_label`` (``m'``), also reports the minimal cycle length
    under constant edge length ``1/m'``; it defaults to ``m`` itself.
    """
    m = ball.m if m is None else m
    if m != ball.m:
        raise MixedPresentation(f"ball was built for m = {ball.m}, not {m}")
    if m is not None and ball.radius < m:
        raise RadiusTooSmall(f"radius {ball.radius} < m = {m}; a {2 * m}-cycle may not fit")
    n, witness = shortest_cycle(ball.adjacency)
    if m is None:
        return GirthReport(None, ball.radius, n, None, n is None, False, tuple(witness), None)
    bound = 2 * m
    mp = m if prime_label is None else prime_label
    return GirthReport(
        m, ball.radius, n, bound,
        passed=n is None or n >= bound,
        found_exact=n == bound,
        witness=tuple(witness),
        min_cycle_length=None if n is None else Fraction(n, mp),
    )


def positive_words(length: int, letters: Iterable[str] = ("s", "t")):
    letters = tuple(letters)
    words = [""]
    for _ in range(length):
        words = [w + c for w in words for c in letters]
    return words
