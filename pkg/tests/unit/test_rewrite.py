"""Tests for truncation, extension, full truncation and relabeling."""

import pytest

from polyhedral_volume.core.angles import RIGHT_ANGLE, THIRD_PI, Angle
from polyhedral_volume.core.circuits import circuit_from_edges, euclidean_4_circuits
from polyhedral_volume.core.errors import HasPrismatic3Circuit, HypothesisViolated, NotCoxeter
from polyhedral_volume.core.polyhedron import is_isomorphic
from polyhedral_volume.core.rewrite import (
    classify_quadrilateral,
    extend,
    full_truncation,
    hyperideal_vertices,
    truncate,
    truncate_and_extend,
    truncate_vertices,
    uniformize_labeling,
    vertex_partition,
)
from polyhedral_volume.generators.prism import (
    a_edge,
    b_edge,
    right_horizontal_prism,
    single_euclidean_prism,
    uniform_prism,
)

from .conftest import builtin_with_default


class TestTruncation:
    def test_truncate_one_cube_vertex(self, cube):
        truncated = truncate_vertices(cube, [0])
        assert truncated.vertex_count == 10
        assert truncated.face_count == 7
        assert truncated.face_kinds[-1] == "triangle"
        assert truncated.vertex_origin[:7] == (1, 2, 3, 4, 5, 6, 7)
        cap = truncated.face_edges(truncated.face_count - 1)
        assert all(truncated.labels[e] == RIGHT_ANGLE for e in cap)

    def test_degree4_vertex_gets_quadrilateral(self, right_octahedron):
        truncated = truncate_vertices(right_octahedron, [0], kinds={0: "ideal"})
        assert len(truncated.faces[-1]) == 4
        assert truncated.face_kinds[-1] == "ideal"

    def test_truncate_hyperideal_vertices(self):
        prism = uniform_prism(5, 3, 2, 4)
        assert hyperideal_vertices(prism) == [0, 1, 2, 3, 4]
        truncated = truncate(prism)
        assert truncated.vertex_count == 20
        assert hyperideal_vertices(truncated) == []

    def test_nothing_to_truncate(self, dodecahedron):
        assert truncate(dodecahedron) is dodecahedron

    def test_extend_undoes_truncation(self, cube):
        restored = extend(truncate_vertices(cube, [0]))
        assert restored.vertex_count == 8
        assert is_isomorphic(restored, cube)

    def test_truncate_and_extend(self, cube):
        result = truncate_and_extend(truncate_vertices(cube, [0]))
        assert is_isomorphic(result, cube)
        hyperideal = truncate_and_extend(uniform_prism(5, 3, 2, 4))
        assert hyperideal.vertex_count == 20


class TestFullTruncation:
    def test_dodecahedron_becomes_icosidodecahedron(self, dodecahedron):
        result = full_truncation(dodecahedron)
        counts = result.counts
        assert (counts.n2, counts.n3, counts.n4, counts.e33, counts.e34) == (0, 20, 0, 30, 0)
        assert result.polyhedron.vertex_count == 30
        assert result.polyhedron.face_count == 32
        assert all(result.polyhedron.degree(v) == 4 for v in range(30))
        assert counts.ideal_vertices == 30
        assert counts.finite_vertices == 0

    def test_octahedron_is_unchanged(self, right_octahedron):
        result = full_truncation(right_octahedron)
        assert result.counts.n4 == 6
        assert result.counts.n3 == 0
        assert result.polyhedron.vertex_count == 6

    def test_vertex_partition(self, right_octahedron):
        truncated = truncate_vertices(right_octahedron, [0])
        n2, n3, n4 = vertex_partition(truncated)
        assert len(n4) == 5
        assert n2 == []
        assert len(n3) == 4


class TestUniformize:
    def test_small_labels_become_third_pi(self):
        dodecahedron = builtin_with_default("dodecahedron", 4)
        uniform, report = uniformize_labeling(dodecahedron)
        assert set(uniform.labels.values()) == {THIRD_PI}
        assert report.realizable

    def test_right_angles_kept(self, dodecahedron):
        uniform, _ = uniformize_labeling(dodecahedron)
        assert set(uniform.labels.values()) == {RIGHT_ANGLE}

    def test_needs_six_faces(self, triangular_prism):
        with pytest.raises(HypothesisViolated):
            uniformize_labeling(triangular_prism)

    def test_rejects_prismatic_3_circuit(self, cube):
        with pytest.raises(HasPrismatic3Circuit):
            uniformize_labeling(truncate_vertices(cube, [0]))

    def test_rejects_non_coxeter_label(self, dodecahedron):
        labels = dict(dodecahedron.labels)
        labels[(0, 1)] = Angle.from_pi_fraction("2/5")
        with pytest.raises(NotCoxeter):
            uniformize_labeling(dodecahedron.with_labels(labels))


class TestClassifyQuadrilateral:
    def test_right_horizontal_prism_is_cylindrical(self):
        n = 6
        prism = right_horizontal_prism(n)
        circuit = circuit_from_edges(
            prism, [a_edge(n, 0), b_edge(n, 0), a_edge(n, 3), b_edge(n, 3)]
        )
        kind, witness = classify_quadrilateral(prism, circuit)
        assert kind == "cylindrical"
        assert witness is not None

    def test_single_euclidean_prism_is_acylindrical(self):
        prism = single_euclidean_prism(6)
        (circuit,) = euclidean_4_circuits(prism)
        assert classify_quadrilateral(prism, circuit) == ("acylindrical", None)
