"""Combinatorial curvature of 2-dimensional length complexes.

Angles are measured in units of pi: the angle of a triangle at a vertex is the
length of the opposite edge. With that convention

    vertex curvature  k(v) = 2 - chi(Lk v) - (sum of lengths of edges in Lk v)
    face curvature    k(f) = (sum of the three edge lengths of f) - 1

and the faces plus vertices sum to exactly ``2 * chi(X)``.
"""

from __future__ import annotations

import dataclasses
from collections import defaultdict
from fractions import Fraction
from typing import Hashable, Mapping, Sequence

from .errors import FaceNotFound, NotASurface, VertexNotFound
from .simplicial_core import (
    LengthComplex,
    LengthViolation,
    SimplicialComplex,
    euler_characteristic,
    format_rational,
)

__all__ = [
    "CurvatureReport",
    "validate_length_function",
    "vertex_curvature",
    "face_curvature",
    "gauss_bonnet",
    "surface_defect",
    "cell_gauss_bonnet",
]


@dataclasses.dataclass(frozen=True)
class CurvatureReport:
    vertex_curvatures: Mapping[Hashable, Fraction]
    face_curvatures: Mapping[Hashable, Fraction]
    total: Fraction
    euler2: Fraction
    residual: Fraction

    def to_json(self) -> dict:
        def name(k):
            return k if isinstance(k, str) else "-".join(sorted(k))

        return {
            "vertex_curvatures": {name(v): format_rational(q) for v, q in sorted(self.vertex_curvatures.items(), key=lambda kv: name(kv[0]))},
            "face_curvatures": {name(f): format_rational(q) for f, q in sorted(self.face_curvatures.items(), key=lambda kv: name(kv[0]))},
            "total": format_rational(self.total),
            "euler2": format_rational(self.euler2),
            "residual": format_rational(self.residual),
        }


def validate_length_function(X: LengthComplex) -> list[LengthViolation]:
    """Every edge outside [0, 1/2] and every triangle breaking the sum or triangle inequality."""
    return X.violations()


def vertex_curvature(X: LengthComplex, v) -> Fraction:
    if frozenset((v,)) not in X.complex.simplices:
        raise VertexNotFound(f"vertex {v!r} not in complex")
    lk = X.complex.link({v})
    return 2 - euler_characteristic(lk) - sum((X.lengths[e] for e in lk.edges), Fraction(0))


def face_curvature(X: LengthComplex, f) -> Fraction:
    f = frozenset(f)
    if len(f) != 3 or f not in X.complex.simplices:
        raise FaceNotFound(f"no 2-simplex {sorted(f)}")
    a, b, c = sorted(f)
    return X.length(a, b) + X.length(b, c) + X.length(a, c) - 1


def _link_is_path_or_cycle(lk: SimplicialComplex) -> bool:
    if lk.dimension != 1:
        return False
    adj = lk.adjacency
    if any(len(n) > 2 for n in adj.values()):
        return False
    start = lk.vertices[0]
    seen, todo = {start}, [start]
    while todo:
        for w in adj[todo.pop()]:
            if w not in seen:
                seen.add(w)
                todo.append(w)
    return len(seen) == len(adj)


def surface_defect(X: SimplicialComplex):
    """``None`` for a compact surface (with or without boundary), else ``(message, where)``."""
    if X.dimension > 2:
        s = X.faces(X.dimension)[0]
        return "simplex of dimension > 2", tuple(sorted(s))
    count = defaultdict(int)
    for t in X.triangles:
        for v in t:
            count[t - {v}] += 1
    for e in X.edges:
        if count[e] > 2:
            return "edge in more than two triangles", tuple(sorted(e))
    for v in X.vertices:
        if not _link_is_path_or_cycle(X.link({v})):
            return "vertex link is not a path or a cycle", (v,)
    return None


def gauss_bonnet(X: LengthComplex) -> CurvatureReport:
    defect = surface_defect(X.complex)
    if defect is not None:
        raise NotASurface(f"{defect[0]}: {'-'.join(defect[1])}", defect[1])
    verts = {v: vertex_curvature(X, v) for v in X.complex.vertices}
    faces = {t: face_curvature(X, t) for t in X.complex.triangles}
    total = sum(verts.values(), Fraction(0)) + sum(faces.values(), Fraction(0))
    euler2 = Fraction(2 * euler_characteristic(X.complex))
    return CurvatureReport(verts, faces, total, euler2, total - euler2)


def cell_gauss_bonnet(vertices: Sequence[Hashable],
                      edges: Mapping[Hashable, tuple],
                      faces: Mapping[Hashable, tuple]) -> CurvatureReport:
    """Curvature audit for a triangle complex given by explicit cells.

    ``edges`` maps an edge id to ``(u, v, length)`` and ``faces`` maps a face
    id to its three edge ids. Parallel edges are allowed, which covers the
    boundary annulus of a disk with exactly two interior vertices. The link
    of ``v`` has one vertex per edge at ``v`` and one edge per face at ``v``
    (the face's side opposite ``v``).
    """
    edge_deg = defaultdict(int)
    for u, v, _ in edges.values():
        edge_deg[u] += 1
        edge_deg[v] += 1
    face_deg = defaultdict(int)
    opposite = defaultdict(Fraction)
    face_curv = {}
    for f, eids in faces.items():
        sides = [edges[e] for e in eids]
        face_curv[f] = sum((s[2] for s in sides), Fraction(0)) - 1
        for v in {x for s in sides for x in s[:2]}:
            face_deg[v] += 1
            opposite[v] += sum((s[2] for s in sides if v not in s[:2]), Fraction(0))
    vert_curv = {v: 2 - (edge_deg[v] - face_deg[v]) - opposite[v] for v in vertices}
    total = sum(vert_curv.values(), Fraction(0)) + sum(face_curv.values(), Fraction(0))
    euler2 = Fraction(2 * (len(vertices) - len(edges) + len(faces)))
    return CurvatureReport(vert_curv, face_curv, total, euler2, total - euler2)
