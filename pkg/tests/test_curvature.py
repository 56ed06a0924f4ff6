import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from curvata.curvature import (
    cell_gauss_bonnet,
    face_curvature,
    gauss_bonnet,
    surface_defect,
    validate_length_function,
    vertex_curvature,
)
from curvata.errors import FaceNotFound, NotASurface, VertexNotFound
from curvata.simplicial_core import LengthComplex, build_complex

import gen

OCTAHEDRON = build_complex([(x, y, z) for x in ("n", "s") for y in ("e", "w") for z in ("f", "b")])


def one_triangle(ab, bc, ac):
    cx = build_complex([("a", "b", "c")])
    return LengthComplex(cx, {frozenset("ab"): ab, frozenset("bc"): bc, frozenset("ac"): ac})


def hex_wheel():
    rim = [f"r{i}" for i in range(6)]
    return LengthComplex.constant(build_complex([("o", rim[i], rim[(i + 1) % 6]) for i in range(6)]), F(1, 3))


class TestValidate:
    def test_ok(self):
        assert validate_length_function(one_triangle(F(1, 2), F(1, 3), F(1, 6))) == []

    def test_sum(self):
        (v,) = validate_length_function(one_triangle(F(1, 2), F(1, 2), F(1, 2)))
        assert v.kind == "triangle-sum"

    def test_inequality(self):
        (v,) = validate_length_function(one_triangle(F(1, 2), F(1, 6), F(1, 6)))
        assert v.kind == "triangle-inequality"

    def test_edge_range(self):
        kinds = {v.kind for v in validate_length_function(one_triangle(F(3, 5), F(1, 6), F(1, 6)))}
        assert "edge-range" in kinds


class TestCurvature:
    def test_flat_hex_center(self):
        assert vertex_curvature(hex_wheel(), "o") == 0

    def test_triangle_corner(self):
        assert vertex_curvature(LengthComplex.constant(build_complex([("a", "b", "c")]), F(1, 3)), "a") == F(2, 3)

    def test_isolated_vertex(self):
        assert vertex_curvature(LengthComplex.constant(build_complex([("a",)]), F(1, 3)), "a") == 2

    @pytest.mark.parametrize("ls,k", [((F(1, 3),) * 3, 0), ((F(1, 2), F(1, 4), F(1, 4)), 0),
                                      ((F(1, 3), F(1, 3), F(1, 6)), F(-1, 6))])
    def test_face(self, ls, k):
        assert face_curvature(one_triangle(*ls), "abc") == k

    def test_missing(self):
        X = hex_wheel()
        with pytest.raises(VertexNotFound):
            vertex_curvature(X, "zz")
        with pytest.raises(FaceNotFound):
            face_curvature(X, ("o", "r0", "r3"))


class TestGaussBonnet:
    def test_single_triangle(self):
        r = gauss_bonnet(LengthComplex.constant(build_complex([("a", "b", "c")]), F(1, 3)))
        assert r.total == 2 and r.euler2 == 2 and r.residual == 0

    def test_octahedron(self):
        r = gauss_bonnet(LengthComplex.constant(OCTAHEDRON, F(1, 3)))
        assert r.total == 4 and all(k == 0 for k in r.face_curvatures.values())
        assert all(k == F(2, 3) for k in r.vertex_curvatures.values())

    def test_not_a_surface(self):
        book = build_complex([("a", "b", "c"), ("a", "b", "d"), ("a", "b", "e")])
        with pytest.raises(NotASurface) as info:
            gauss_bonnet(LengthComplex.constant(book, F(1, 3)))
        assert info.value.where == ("a", "b")

    def test_three_dimensional(self):
        assert surface_defect(build_complex([("a", "b", "c", "d")]))[0] == "simplex of dimension > 2"

    def test_json_is_rational_strings(self):
        js = gauss_bonnet(hex_wheel()).to_json()
        assert js["residual"] == "0/1" and js["vertex_curvatures"]["o"] == "0/1"

    def test_cell_version_agrees_on_simplicial_input(self):
        X = gen.random_lengths(random.Random(5), gen.random_disk(random.Random(5), 15))
        edges = {"-".join(sorted(e)): (*sorted(e), l) for e, l in X.lengths.items()}
        faces = {t: tuple("-".join(p) for p in ((a, b), (b, c), (a, c))) for t in X.complex.triangles
                 for a, b, c in [sorted(t)]}
        cell = cell_gauss_bonnet(X.complex.vertices, edges, faces)
        simp = gauss_bonnet(X)
        assert cell.vertex_curvatures == simp.vertex_curvatures and cell.residual == 0

    @settings(max_examples=50)
    @given(st.integers(0, 10_000), st.booleans())
    def test_residual_zero_and_faces_nonpositive(self, seed, sphere):
        rng = random.Random(seed)
        cx = gen.random_sphere(rng, 15) if sphere else gen.random_disk(rng, 15)
        X = gen.random_lengths(rng, cx)
        r = gauss_bonnet(X)
        assert r.residual == 0
        assert all(k <= 0 for k in r.face_curvatures.values())
