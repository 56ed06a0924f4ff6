"""
Disk diagrams over length complexes.

A :class:`DiskDiagram` is a triangulated disk together with a vertex map into
a target length complex. This module checks such diagrams, builds fillings
without interior vertices, reduces diagrams until their pullback is locally
large, and extracts the boundary annulus used to compare the outer and inner
boundary lengths.

Disk vertices and target vertices live in separate namespaces; only
``vertex_map`` relates them.
"""

from __future__ import annotations

import dataclasses
import itertools
from collections import defaultdict
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Sequence

from .curvature import CurvatureReport, cell_gauss_bonnet
from .errors import (
    BoundaryChord,
    InternalInvariantViolation,
    NoDiagonal,
    NotADisk,
    NotFlag,
    PreconditionFailed,
    ReductionStuck,
    TargetNotLocallyLarge,
    TooFewInteriorVertices,
)
from .simplicial_core import (
    TWO,
    Cycle,
    LengthComplex,
    Path,
    SimplicialComplex,
    format_rational,
    geodesic_distance,
    is_large,
    is_locally_large,
)


def _cycle_from_edges(edges) -> tuple | None:
    """Order a set of edges into a single cycle starting at its least vertex."""
    adj = defaultdict(set)
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    if not adj or any(len(n) != 2 for n in adj.values()):
        return None
    start = min(adj)
    order = [start, min(adj[start])]
    while True:
        nxt = [w for w in adj[order[-1]] if w != order[-2]]
        if nxt[0] == start:
            break
        order.append(nxt[0])
        if len(order) > len(adj):
            return None
    return tuple(order) if len(order) == len(adj) else None


class _Disk:
    """Combinatorial bookkeeping for a candidate triangulated disk."""

    def __init__(self, cx: SimplicialComplex):
        self.cx = cx
        self.triangles = cx.triangles
        self.faces_of_edge = defaultdict(list)
        self.star = defaultdict(list)
        for t in self.triangles:
            for v in t:
                self.faces_of_edge[t - {v}].append(t)
                self.star[v].append(t)

    @cached_property
    def defects(self) -> list[str]:
        cx = self.cx
        out = []
        if cx.dimension != 2:
            return [f"dimension is {cx.dimension}, not 2"]
        for e in cx.edges:
            n = len(self.faces_of_edge[e])
            if n == 0:
                out.append(f"edge {'-'.join(sorted(e))} lies in no triangle")
            elif n > 2:
                out.append(f"edge {'-'.join(sorted(e))} lies in {n} triangles")
        if out:
            return out
        if self.boundary is None:
            return ["boundary edges do not form a single cycle"]
        on_boundary = set(self.boundary)
        for v in cx.vertices:
            lk = [t - {v} for t in self.star[v]]
            if not lk:
                out.append(f"vertex {v} lies in no triangle")
                continue
            if v in on_boundary:
                if _path_from_edges(lk) is None:
                    out.append(f"boundary vertex {v} has a link that is not a path")
            elif _cycle_from_edges(lk) is None:
                out.append(f"interior vertex {v} has a link that is not a cycle")
        if not out and len(cx.vertices) - len(cx.edges) + len(self.triangles) != 1:
            out.append("Euler characteristic is not 1")
        return out

    @cached_property
    def boundary_edges(self) -> list[frozenset]:
        return sorted((e for e, ts in self.faces_of_edge.items() if len(ts) == 1), key=sorted)

    @cached_property
    def boundary(self) -> tuple | None:
        return _cycle_from_edges(self.boundary_edges)

    @cached_property
    def interior(self) -> tuple:
        bd = set(self.boundary or ())
        return tuple(v for v in self.cx.vertices if v not in bd)

    def link_cycle(self, v) -> tuple:
        return _cycle_from_edges([t - {v} for t in self.star[v]])


def _path_from_edges(edges) -> tuple | None:
    adj = defaultdict(set)
    for e in edges:
        a, b = tuple(e)
        adj[a].add(b)
        adj[b].add(a)
    ends = sorted(v for v, n in adj.items() if len(n) == 1)
    if len(ends) != 2 or any(len(n) > 2 for n in adj.values()):
        return None
    order = [ends[0]]
    prev = None
    while order[-1] != ends[1]:
        nxt = [w for w in adj[order[-1]] if w != prev]
        prev = order[-1]
        order.append(nxt[0])
    return tuple(order) if len(order) == len(adj) else None


@dataclasses.dataclass(frozen=True)
class Defect:
    kind: str
    where: tuple
    detail: str

    def to_json(self):
        return {"kind": self.kind, "where": list(self.where), "detail": self.detail}


@dataclasses.dataclass(frozen=True)
class DiskDiagram:
    disk: SimplicialComplex
    target: LengthComplex
    vertex_map: Mapping[str, str]

    def __post_init__(self):
        object.__setattr__(self, "vertex_map", dict(self.vertex_map))

    @cached_property
    def _d(self) -> _Disk:
        return _Disk(self.disk)

    @property
    def triangle_count(self) -> int:
        return len(self.disk.triangles)

    @property
    def boundary(self) -> tuple:
        bd = self._d.boundary
        if bd is None or self._d.defects:
            raise NotADisk("; ".join(self._d.defects) or "no boundary cycle")
        return bd

    @property
    def interior_vertices(self) -> tuple:
        self.boundary
        return self._d.interior

    def link_cycle(self, v) -> tuple:
        return self._d.link_cycle(v)

    def image(self, simplex) -> frozenset:
        return frozenset(self.vertex_map[v] for v in simplex)

    def degenerate_edges(self) -> list[tuple]:
        return [tuple(sorted(e)) for e in self.disk.edges if len(self.image(e)) < 2]

    def pullback(self) -> LengthComplex:
        """The disk with every edge given the length of its image."""
        bad = self.degenerate_edges()
        if bad:
            raise PreconditionFailed(f"edge {'-'.join(bad[0])} maps to a vertex; pullback undefined")
        return LengthComplex(self.disk, {e: self.target.length(self.image(e)) for e in self.disk.edges})

    def boundary_length(self) -> Fraction:
        return Cycle(self.boundary).length(self.pullback())

    def is_locally_large(self):
        return is_locally_large(self.pullback())


def check_filling_diagram(d: DiskDiagram, sigma: Sequence[str]) -> list[Defect]:
    """Everything that stops ``d`` from being a nondegenerate filling diagram for ``sigma``."""
    out = []
    for msg in d._d.defects:
        out.append(Defect("not-a-disk", (), msg))
    missing = [v for v in d.disk.vertices if v not in d.vertex_map]
    for v in missing:
        out.append(Defect("unmapped-vertex", (v,), f"disk vertex {v} has no image"))
    if missing:
        return out
    target = d.target.complex
    for s in sorted(d.disk.simplices, key=lambda s: (len(s), sorted(s))):
        img = d.image(s)
        if img not in target.simplices:
            out.append(Defect("not-simplicial", tuple(sorted(s)),
                              f"image {sorted(img)} is not a simplex of the target"))
        elif len(img) < len(s):
            out.append(Defect("degenerate", tuple(sorted(s)), f"collapses to {sorted(img)}"))
    sigma = tuple(sigma)
    if len(sigma) < 3 or len(set(sigma)) != len(sigma) or any(
            frozenset((sigma[i], sigma[(i + 1) % len(sigma)])) not in target.simplices
            for i in range(len(sigma))):
        out.append(Defect("sigma-not-cycle", sigma, "sigma is not an embedded cycle of the target"))
        return out
    bd = d._d.boundary
    if bd is not None:
        img = tuple(d.vertex_map[v] for v in bd)
        if len(img) != len(sigma) or len(set(img)) != len(img) or not Cycle(img).same_as(Cycle(sigma)):
            out.append(Defect("boundary-not-isomorphic", img,
                              f"boundary ({len(bd)} edges) does not map isomorphically onto sigma ({len(sigma)} edges)"))
    return out


def _is_cycle_in(X: SimplicialComplex, cyc: Sequence[str]) -> bool:
    n = len(cyc)
    return (n >= 3 and len(set(cyc)) == n
            and all(frozenset((cyc[i], cyc[(i + 1) % n])) in X.simplices for i in range(n)))


def _fill_triangles(X: SimplicialComplex, sigma: tuple, forbidden=frozenset()) -> list[frozenset]:
    """Triangulate the polygon ``sigma`` by diagonals of ``X``.

    Diagonals are tried in lexicographic order of their endpoint pair, with
    backtracking when a sub-polygon cannot be completed. Pairs in
    ``forbidden`` may not be used as diagonals.
    """
    memo = {}

    def solve(cyc: tuple):
        key = cyc
        if key in memo:
            return memo[key]
        if len(cyc) == 3:
            res = [frozenset(cyc)] if frozenset(cyc) in X.simplices else NotFlag
            memo[key] = res
            return res
        n = len(cyc)
        diags = []
        for i, j in itertools.combinations(range(n), 2):
            if j - i in (1, n - 1):
                continue
            pair = frozenset((cyc[i], cyc[j]))
            if pair in X.simplices and pair not in forbidden:
                diags.append((tuple(sorted(pair)), i, j))
        diags.sort()
        res = NoDiagonal
        for _, i, j in diags:
            left = solve(cyc[i:j + 1])
            if isinstance(left, list):
                right = solve(cyc[j:] + cyc[:i + 1])
                if isinstance(right, list):
                    res = left + right
                    break
        memo[key] = res
        return res

    res = solve(tuple(sigma))
    if res is NotFlag:
        raise NotFlag(f"3-cycle {'-'.join(sigma)} spans no 2-simplex")
    if res is NoDiagonal:
        if len(sigma) > 3 and not any(
                frozenset((sigma[i], sigma[j])) in X.simplices
                for i, j in itertools.combinations(range(len(sigma)), 2) if j - i not in (1, len(sigma) - 1)):
            raise NoDiagonal(f"cycle {'-'.join(sigma)} has no diagonal (it is full)")
        raise NoDiagonal(f"no choice of diagonals fills {'-'.join(sigma)}")
    return res


def fill_no_interior(X: LengthComplex, sigma: Sequence[str]) -> DiskDiagram:
    """Fill a cycle of length < 2 in a large complex by a disk with no interior vertices.

    A 3-cycle is filled by the 2-simplex it spans; a longer cycle is split
    along a diagonal and both halves are filled recursively. The disk reuses
    the target's vertex names and maps by the identity.
    """
    sigma = tuple(sigma)
    if not _is_cycle_in(X.complex, sigma):
        raise PreconditionFailed(f"{'-'.join(sigma)} is not an embedded cycle of the target")
    if Cycle(sigma).length(X) >= TWO:
        raise PreconditionFailed(f"cycle length {format_rational(Cycle(sigma).length(X))} is not < 2")
    tris = _fill_triangles(X.complex, sigma)
    disk = SimplicialComplex.from_simplices(tris)
    return DiskDiagram(disk, X, {v: v for v in sigma})


# ---------------------------------------------------------------------------
# reduction


def _flood(tris_of_edge, start, walls) -> set:
    seen = {start}
    todo = [start]
    while todo:
        t = todo.pop()
        for v in t:
            e = t - {v}
            if e in walls:
                continue
            for u in tris_of_edge[e]:
                if u not in seen:
                    seen.add(u)
                    todo.append(u)
    return seen


def _region_boundary(region) -> set:
    count = defaultdict(int)
    for t in region:
        for v in t:
            count[t - {v}] += 1
    return {e for e, n in count.items() if n == 1}


def _excise_degenerate_edge(d: DiskDiagram, edge: tuple) -> DiskDiagram:
    """Remove a collapsed edge ``ab`` by cutting out a disk around it and zipping.

    In the simple case this deletes the two triangles on ``ab`` and glues the
    remaining four sides in pairs. When ``a`` and ``b`` have further common
    neighbours, the region cut out is the union of the outermost 3-cycle
    discs ``a-b-x`` on either side of ``ab``, so the zipped result stays a
    simplicial disk.
    """
    D = d._d
    bd = set(D.boundary)
    a, b = edge
    if a in bd and b in bd:
        raise PreconditionFailed(f"degenerate edge {a}-{b} joins two boundary vertices")
    keep, drop = (b, a) if b in bd else (a, b)
    e = frozenset((a, b))
    sides = D.faces_of_edge[e]
    if len(sides) != 2:
        raise PreconditionFailed(f"degenerate edge {a}-{b} is a boundary edge")
    adj = d.disk.adjacency
    common = sorted(adj[a] & adj[b])
    chosen = []
    for side in sides:
        best = None
        for z in common:
            walls = {e, frozenset((a, z)), frozenset((b, z))}
            region = _flood(D.faces_of_edge, side, walls)
            if _region_boundary(region) <= walls and (best is None or len(region) > len(best)):
                best = region
        chosen.append(best)
    cut = chosen[0] | chosen[1]
    new_tris = []
    for t in d.disk.triangles:
        if t in cut:
            continue
        new_tris.append(frozenset(keep if v == drop else v for v in t))
    disk = SimplicialComplex.from_simplices(new_tris)
    vmap = {v: d.vertex_map[v] for v in disk.vertices}
    out = DiskDiagram(disk, d.target, vmap)
    if out._d.defects or out._d.boundary is None or len(out._d.boundary) != len(D.boundary):
        raise InternalInvariantViolation(f"excising {a}-{b} did not leave a disk: {out._d.defects}")
    return out


def _polygon_dp(link: tuple, images: tuple, Xlink: SimplicialComplex, existing) -> list | None:
    """Triangulate the disk polygon ``link`` so every triangle maps onto a 2-simplex of ``Xlink``."""
    n = len(link)

    def diag_ok(i, j):
        if (j - i) % n in (1, n - 1):
            return True
        if frozenset((link[i], link[j])) in existing:
            return False
        return frozenset((images[i], images[j])) in Xlink.simplices

    memo = {}

    def solve(i, j):
        if j - i == 1:
            return []
        if (i, j) in memo:
            return memo[i, j]
        res = None
        for k in range(i + 1, j):
            tri = frozenset((images[i], images[k], images[j]))
            if len(tri) == 3 and tri in Xlink.simplices and diag_ok(i, k) and diag_ok(k, j):
                left = solve(i, k)
                right = solve(k, j) if left is not None else None
                if right is not None:
                    res = left + right + [frozenset((link[i], link[k], link[j]))]
                    break
        memo[i, j] = res
        return res

    return solve(0, n - 1)


def _replace_star(d: DiskDiagram, v) -> DiskDiagram | None:
    """Swap the star of an interior vertex for a filling of its link with no interior vertex.

    Returns ``None`` when no admissible filling exists for this vertex.
    """
    D = d._d
    link = D.link_cycle(v)
    images = tuple(d.vertex_map[u] for u in link)
    Xlink = d.target.complex.link({d.vertex_map[v]})
    inner = set(link)
    # edges among link vertices that do not pass through v: filling may not reuse them
    existing = {e for e in d.disk.edges if e <= inner}
    new = None
    if len(set(images)) == len(images):
        inv = dict(zip(images, link))
        forbidden = frozenset(frozenset((images[i], images[j]))
                              for i, j in itertools.combinations(range(len(link)), 2)
                              if frozenset((link[i], link[j])) in existing)
        try:
            tris = _fill_triangles(Xlink, images, forbidden)
            new = [frozenset(inv[x] for x in t) for t in tris]
        except NoDiagonal as exc:
            if not is_large(d.target.link({d.vertex_map[v]})):
                raise TargetNotLocallyLarge(
                    f"link of target vertex {d.vertex_map[v]} is not large ({exc})") from None
        except NotFlag as exc:
            raise TargetNotLocallyLarge(
                f"link of target vertex {d.vertex_map[v]} is not flag ({exc})") from None
    if new is None:
        new = _polygon_dp(link, images, Xlink, existing)
        if new is None:
            return None
    keep = [t for t in d.disk.triangles if v not in t]
    disk = SimplicialComplex.from_simplices(keep + new)
    vmap = {u: d.vertex_map[u] for u in disk.vertices}
    out = DiskDiagram(disk, d.target, vmap)
    if out._d.defects:
        raise InternalInvariantViolation(f"replacing the star of {v} broke the disk: {out._d.defects}")
    return out


def _short_interior_vertices(d: DiskDiagram) -> list:
    out = []
    for v in d.interior_vertices:
        link = d.link_cycle(v)
        total = sum((d.target.length(d.vertex_map[link[i]], d.vertex_map[link[(i + 1) % len(link)]])
                     for i in range(len(link))), Fraction(0))
        if total < TWO:
            out.append(v)
    return out


def reduce_to_locally_large(d: DiskDiagram, log: list | None = None) -> DiskDiagram:
    """Shrink ``d`` until no edge collapses and every interior link has length >= 2.

    Each step removes at least two triangles, so the loop terminates. Steps
    are appended to ``log`` as ``(kind, where, triangles_before, triangles_after)``.
    """
    if d._d.defects:
        raise NotADisk("; ".join(d._d.defects))
    for s in d.disk.simplices:
        if d.image(s) not in d.target.complex.simplices:
            raise PreconditionFailed(f"vertex map is not simplicial on {sorted(s)}")
    while True:
        before = d.triangle_count
        degenerate = d.degenerate_edges()
        if degenerate:
            edge = degenerate[0]
            d = _excise_degenerate_edge(d, edge)
            step = ("excise", edge)
        else:
            bad = _short_interior_vertices(d)
            if not bad:
                return d
            for v in bad:
                nd = _replace_star(d, v)
                if nd is not None:
                    d = nd
                    step = ("replace-star", (v,))
                    break
            else:
                raise ReductionStuck(f"no admissible replacement for interior vertices {bad}")
        if d.triangle_count >= before:
            raise InternalInvariantViolation("reduction step did not decrease the triangle count")
        if log is not None:
            log.append(step + (before, d.triangle_count))


# ---------------------------------------------------------------------------
# boundary annulus


@dataclasses.dataclass(frozen=True)
class BoundaryAnnulus:
    """Cell structure of the boundary complex of a disk.

    ``edges`` maps an edge id to ``(u, v, length)``; ``faces`` maps the
    originating disk triangle to its three edge ids. ``origin`` sends each
    annulus vertex to the disk vertex it copies; ``copies`` lists, for every
    disk vertex that was split, the annulus vertices it became.
    """

    vertices: tuple
    edges: Mapping[str, tuple]
    faces: Mapping[frozenset, tuple]
    outer: tuple
    inner: tuple
    inner_edges: tuple
    origin: Mapping[str, str]
    copies: Mapping[str, tuple]

    @property
    def has_double_edge(self) -> bool:
        pairs = [frozenset(e[:2]) for e in self.edges.values()]
        return len(pairs) != len(set(pairs))

    @property
    def euler_characteristic(self) -> int:
        return len(self.vertices) - len(self.edges) + len(self.faces)

    def outer_length(self) -> Fraction:
        n = len(self.outer)
        return sum((self.edges[_edge_id(self.outer[i], self.outer[(i + 1) % n])][2] for i in range(n)), Fraction(0))

    def inner_length(self) -> Fraction:
        return sum((self.edges[e][2] for e in self.inner_edges), Fraction(0))

    def gauss_bonnet(self) -> CurvatureReport:
        return cell_gauss_bonnet(self.vertices, self.edges, self.faces)

    def as_length_complex(self) -> LengthComplex:
        if self.has_double_edge:
            raise PreconditionFailed("annulus has a doubled edge; it is not a simplicial complex")
        tris = [frozenset(v for e in eids for v in self.edges[e][:2]) for eids in self.faces.values()]
        cx = SimplicialComplex.from_simplices(tris)
        return LengthComplex(cx, {frozenset(e[:2]): e[2] for e in self.edges.values()})


def _edge_id(u, v) -> str:
    a, b = sorted((u, v))
    return f"{a}~{b}"


def boundary_chords(d: DiskDiagram) -> list[tuple]:
    bd = d.boundary
    n = len(bd)
    pos = {v: i for i, v in enumerate(bd)}
    out = []
    for e in d.disk.edges:
        a, b = sorted(e)
        if a in pos and b in pos and (pos[a] - pos[b]) % n not in (1, n - 1):
            out.append((a, b))
    return out


def boundary_annulus(d: DiskDiagram) -> BoundaryAnnulus:
    bd = d.boundary
    interior = d.interior_vertices
    if len(interior) < 2:
        raise TooFewInteriorVertices(f"disk has {len(interior)} interior vertices; need at least 2")
    chords = boundary_chords(d)
    if chords:
        raise BoundaryChord(f"edge {'-'.join(chords[0])} joins nonconsecutive boundary vertices")
    on_bd = set(bd)
    lengths = d.pullback().lengths
    layer = [t for t in d.disk.triangles if t & on_bd]
    layer_set = set(layer)

    # copies of interior vertices: union (triangle, w) pairs across shared layer edges
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for t in layer:
        for w in t - on_bd:
            parent[(t, w)] = (t, w)
    faces_of_edge = d._d.faces_of_edge
    for e, ts in faces_of_edge.items():
        if len(e & on_bd) == 1:
            (w,) = e - on_bd
            ts = [t for t in ts if t in layer_set]
            for t in ts[1:]:
                ra, rb = find((ts[0], w)), find((t, w))
                if ra != rb:
                    parent[max(ra, rb, key=_pair_key)] = min(ra, rb, key=_pair_key)
    classes = defaultdict(set)
    for key in parent:
        classes[find(key)].add(key)
    by_vertex = defaultdict(list)
    for members in classes.values():
        w = next(iter(members))[1]
        by_vertex[w].append(sorted(members, key=_pair_key))
    copy_name = {}
    copies = {}
    for w, groups in sorted(by_vertex.items()):
        groups.sort(key=lambda g: _pair_key(g[0]))
        names = [w] if len(groups) == 1 else [f"{w}#{i}" for i in range(1, len(groups) + 1)]
        for name, g in zip(names, groups):
            for t, _ in g:
                copy_name[(t, w)] = name
        if len(groups) > 1:
            copies[w] = tuple(names)

    def vname(t, v):
        return v if v in on_bd else copy_name[(t, v)]

    edges = {}
    faces = {}
    count = defaultdict(int)
    for t in sorted(layer, key=sorted):
        eids = []
        for x, y in itertools.combinations(sorted(t), 2):
            u, w = vname(t, x), vname(t, y)
            eid = _edge_id(u, w)
            if x not in on_bd and y not in on_bd:
                eid += "@" + ",".join(sorted(t))
            edges[eid] = (min(u, w), max(u, w), lengths[frozenset((x, y))])
            count[eid] += 1
            eids.append(eid)
        faces[t] = tuple(eids)
    outer_ids = {_edge_id(bd[i], bd[(i + 1) % len(bd)]) for i in range(len(bd))}
    inner_ids = sorted(e for e, n in count.items() if n == 1 and e not in outer_ids)
    inner = _order_multicycle(inner_ids, edges)
    if inner is None:
        raise InternalInvariantViolation("inner boundary of the annulus is not a single cycle")
    vertices = tuple(sorted({v for e in edges.values() for v in e[:2]}))
    origin = {v: v.split("#", 1)[0] for v in vertices}
    ann = BoundaryAnnulus(vertices, edges, faces, tuple(bd), inner[0], inner[1], origin, copies)
    if ann.euler_characteristic != 0:
        raise InternalInvariantViolation(f"boundary complex has Euler characteristic {ann.euler_characteristic}")
    return ann


def _pair_key(p):
    return (sorted(p[0]), p[1])


def _order_multicycle(edge_ids, edges):
    """Order edge ids into one closed cycle; parallel edges allowed. Returns (vertices, edge ids)."""
    if not edge_ids:
        return None
    at = defaultdict(list)
    for e in edge_ids:
        u, v, _ = edges[e]
        at[u].append(e)
        at[v].append(e)
    if any(len(es) != 2 for es in at.values()):
        return None
    start = min(at)
    verts, order = [start], []
    cur, prev_edge = start, None
    while True:
        e = min(x for x in at[cur] if x != prev_edge) if prev_edge else min(at[cur])
        u, v, _ = edges[e]
        nxt = v if u == cur else u
        order.append(e)
        if nxt == start:
            break
        verts.append(nxt)
        cur, prev_edge = nxt, e
        if len(order) > len(edge_ids):
            return None
    if len(order) != len(edge_ids):
        return None
    return tuple(verts), tuple(order)


@dataclasses.dataclass(frozen=True)
class AnnulusCheck:
    outer_length: Fraction
    inner_length: Fraction
    holds: bool
    locally_large: bool

    def to_json(self):
        return {
            "outer_length": format_rational(self.outer_length),
            "inner_length": format_rational(self.inner_length),
            "holds": self.holds,
            "locally_large": self.locally_large,
        }


def annulus_inequality_check(d: DiskDiagram) -> AnnulusCheck:
    """Compare l(outer) with l(inner) + 2 for the boundary annulus of ``d``."""
    ann = boundary_annulus(d)
    l1, l2 = ann.outer_length(), ann.inner_length()
    return AnnulusCheck(l1, l2, l1 >= l2 + TWO, bool(d.is_locally_large()))


@dataclasses.dataclass(frozen=True)
class Shortcut:
    path: Path
    length: Fraction
    arc_lengths: tuple
    shortcut: bool

    def to_json(self):
        return {
            "path": list(self.path.vertices),
            "length": format_rational(self.length),
            "arc_lengths": [format_rational(a) for a in self.arc_lengths],
            "shortcut": self.shortcut,
        }


def shortcut_search(d: DiskDiagram, u, v) -> Shortcut:
    """Shortest path through the disk between two boundary vertices, against both boundary arcs."""
    bd = d.boundary
    if u not in bd or v not in bd:
        raise PreconditionFailed(f"{u} and {v} must both lie on the boundary")
    X = d.pullback()
    length, path = geodesic_distance(X, u, v)
    i, j = bd.index(u), bd.index(v)
    n = len(bd)
    rot = bd[i:] + bd[:i]
    k = (j - i) % n
    arc1 = Path(rot[:k + 1]).length(X)
    arc2 = Path(rot[k:] + (u,)).length(X) if k else Fraction(0)
    return Shortcut(path, length, (arc1, arc2), length < min(arc1, arc2))
