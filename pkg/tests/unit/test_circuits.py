"""Tests for prismatic circuit enumeration."""

import pytest

from polyhedral_volume.core.circuits import (
    circuit_from_edges,
    enumerate_prismatic_circuits,
    euclidean_4_circuits,
)
from polyhedral_volume.core.errors import NotPrismatic
from polyhedral_volume.generators.prism import (
    alternating_prism,
    c_edge,
    right_horizontal_prism,
    single_euclidean_prism,
)


def test_triangular_prism_has_one_trivial_3_circuit(triangular_prism):
    circuits = enumerate_prismatic_circuits(triangular_prism, 3)
    assert len(circuits) == 1
    circuit = circuits[0]
    assert circuit.geometry == "spherical"
    assert circuit.trivial
    assert set(circuit.crossed_edges) == {(0, 3), (1, 4), (2, 5)}
    assert {frozenset(s) for s in circuit.sides} == {frozenset({0, 1, 2}), frozenset({3, 4, 5})}


def test_cube_has_three_trivial_euclidean_4_circuits(cube):
    circuits = euclidean_4_circuits(cube)
    assert len(circuits) == 3
    assert all(c.trivial for c in circuits)
    assert not enumerate_prismatic_circuits(cube, 3)


def test_dodecahedron_has_no_prismatic_circuits(dodecahedron):
    assert enumerate_prismatic_circuits(dodecahedron, 3) == []
    assert enumerate_prismatic_circuits(dodecahedron, 4) == []


def test_octahedron_has_no_prismatic_circuits(right_octahedron):
    assert enumerate_prismatic_circuits(right_octahedron, 3) == []
    assert enumerate_prismatic_circuits(right_octahedron, 4) == []


def test_right_horizontal_prism_circuits():
    prism = right_horizontal_prism(6)
    circuits = euclidean_4_circuits(prism)
    # one circuit per pair of non-adjacent laterals
    assert len(circuits) == 9
    nontrivial = [c for c in circuits if not c.trivial]
    assert len(nontrivial) == 3


def test_single_euclidean_prism():
    prism = single_euclidean_prism(8)
    circuits = euclidean_4_circuits(prism)
    assert len(circuits) == 1
    assert not circuits[0].trivial


def test_alternating_prism_4_circuits_are_hyperbolic():
    prism = alternating_prism(6)
    circuits = enumerate_prismatic_circuits(prism, 4)
    assert circuits
    assert all(c.geometry == "hyperbolic" for c in circuits)


def test_right_angled_mode_ignores_labels():
    prism = alternating_prism(6)
    assert not euclidean_4_circuits(prism)
    assert len(euclidean_4_circuits(prism, right_angled=True)) == 9


def test_circuit_from_edges_is_canonical(cube):
    circuit = circuit_from_edges(cube, [(3, 7), (0, 4), (2, 6), (1, 5)])
    again = circuit_from_edges(cube, [(1, 5), (0, 4), (3, 7), (2, 6)])
    assert circuit == again
    assert circuit.faces[0] == min(circuit.faces)
    assert circuit.key == ((0, 4), (1, 5), (2, 6), (3, 7))


def test_side_of_face(cube):
    circuit = circuit_from_edges(cube, [(0, 4), (1, 5), (2, 6), (3, 7)])
    assert {circuit.side_of_face(0), circuit.side_of_face(1)} == {0, 1}
    assert circuit.side_of_face(2) == -1


class TestNotPrismatic:
    def test_edges_sharing_a_vertex(self, cube):
        with pytest.raises(NotPrismatic, match="share a vertex"):
            circuit_from_edges(cube, [(0, 1), (1, 2), (5, 6)])

    def test_wrong_length(self, cube):
        with pytest.raises(NotPrismatic):
            circuit_from_edges(cube, [(0, 4), (1, 5)])

    def test_not_closing_up(self):
        prism = right_horizontal_prism(6)
        # two vertical edges and a top edge far away
        edges = [c_edge(6, 0), c_edge(6, 3), (8, 9)]
        with pytest.raises(NotPrismatic):
            circuit_from_edges(prism, edges)

    def test_non_edge(self, cube):
        with pytest.raises(NotPrismatic, match="not edges"):
            circuit_from_edges(cube, [(0, 6), (1, 5), (2, 4)])
