"""Tests for the orbifold decomposition loop."""

import random
from unittest.mock import patch

import pytest

from polyhedral_volume.core.angles import THIRD_PI
from polyhedral_volume.core.circuits import euclidean_4_circuits
from polyhedral_volume.core.decompose import (
    NeighborhoodData,
    check_canonicity,
    check_orbifold_preconditions,
    complexity_set,
    decompose,
    decompose_orbifold,
    is_admissible,
    maximal_admissible_subset,
    neighborhoods,
    prismatic_complexity,
    recognize_seifert_fibered,
    spherical_reduce,
)
from polyhedral_volume.core.errors import (
    DecompositionError,
    NotEuclidean4Circuit,
    PreconditionViolated,
)
from polyhedral_volume.core.circuits import enumerate_prismatic_circuits
from polyhedral_volume.core.polyhedron import is_isomorphic
from polyhedral_volume.generators.prism import (
    alternating_prism,
    right_horizontal_prism,
    single_euclidean_prism,
    uniform_prism,
)
from polyhedral_volume.generators.surgery import glue_along_triangles, truncate_vertex

from .conftest import octahedron


# ---------------------------------------------------------------------------
# Neighborhoods and admissibility
# ---------------------------------------------------------------------------


class TestNeighborhoods:
    def test_opposite_faces_neighborhood_covers_prism(self):
        prism = right_horizontal_prism(6)
        gamma = next(c for c in euclidean_4_circuits(prism) if not c.trivial)
        first, second = neighborhoods(prism, gamma)
        assert first.index == 1 and second.index == 2
        assert first.covers(prism) or second.covers(prism)

    def test_single_circuit_bounds_itself(self):
        prism = single_euclidean_prism(6)
        (gamma,) = euclidean_4_circuits(prism)
        first, second = neighborhoods(prism, gamma)
        for hood in (first, second):
            assert not hood.covers(prism)
            assert [c.key for c in hood.boundary] == [gamma.key]

    def test_rejects_hyperbolic_circuit(self):
        prism = alternating_prism(6)
        gamma = enumerate_prismatic_circuits(prism, 4)[0]
        with pytest.raises(NotEuclidean4Circuit):
            neighborhoods(prism, gamma)

    def test_complexity(self):
        assert complexity_set(single_euclidean_prism(6))
        assert prismatic_complexity(single_euclidean_prism(6)) == 1
        assert prismatic_complexity(single_euclidean_prism(6), include_trivial=False) == 1
        assert prismatic_complexity(alternating_prism(6)) == 0

    def test_complexity_counts_trivial_boundary_circuits(self):
        # each of the 5 circuits through two non-adjacent laterals cuts off a single lateral
        prism = right_horizontal_prism(5)
        circuits = euclidean_4_circuits(prism)
        assert len(circuits) == 5
        assert all(c.trivial for c in circuits)
        assert prismatic_complexity(prism) == 5
        assert complexity_set(prism) == {c.key for c in circuits}
        assert prismatic_complexity(prism, include_trivial=False) == 0

    def test_complexity_is_additive(self):
        prism = single_euclidean_prism(6)
        assert prismatic_complexity([prism, prism]) == 2


class TestAdmissibility:
    def test_parallel_circuits_are_admissible(self):
        prism = right_horizontal_prism(8)
        circuits = [c for c in euclidean_4_circuits(prism) if not c.trivial]
        assert is_admissible(circuits[:1])
        chosen = maximal_admissible_subset(circuits)
        assert chosen
        assert is_admissible(chosen)

    def test_crossing_circuits_are_not(self):
        prism = right_horizontal_prism(8)
        circuits = {c.key: c for c in euclidean_4_circuits(prism)}
        # laterals (0, 4) and (2, 6) separate each other's laterals
        by_laterals = {}
        for c in circuits.values():
            laterals = tuple(sorted(f - 2 for f in c.faces if f >= 2))
            by_laterals[laterals] = c
        assert not is_admissible([by_laterals[(0, 4)], by_laterals[(2, 6)]])
        assert is_admissible([by_laterals[(0, 4)], by_laterals[(1, 3)]])


# ---------------------------------------------------------------------------
# Preconditions
# ---------------------------------------------------------------------------


class TestPreconditions:
    def test_degree4_rejected(self, right_octahedron):
        with pytest.raises(PreconditionViolated, match="trivalent"):
            check_orbifold_preconditions(right_octahedron)

    def test_vertex_sum_at_most_pi_rejected(self, tetrahedron):
        with pytest.raises(PreconditionViolated, match="at most π"):
            check_orbifold_preconditions(tetrahedron)

    def test_right_angled_mode_skips_label_checks(self):
        check_orbifold_preconditions(uniform_prism(5, 3, 2, 4), right_angled=True)

    def test_nontrivial_spherical_3_circuit_rejected(self):
        glued = _glued_prisms()
        with pytest.raises(PreconditionViolated, match="prismatic 3-circuit"):
            check_orbifold_preconditions(glued, right_angled=True)


# ---------------------------------------------------------------------------
# Decomposition runs
# ---------------------------------------------------------------------------


def _glued_prisms():
    prism = uniform_prism(5, 3, 2, 4)
    truncated, cap = truncate_vertex(prism, 0)
    return glue_along_triangles(truncated, cap, truncated, cap, name="glued")


class TestDecompose:
    def test_right_angled_pentagonal_prism_is_seifert_fibered(self, pentagonal_prism):
        result = decompose_orbifold(pentagonal_prism)
        assert len(result.seifert_fibered) == 1
        assert result.atoroidal == []
        assert recognize_seifert_fibered(result.seifert_fibered[0])

    def test_hexagonal_prism_is_seifert_fibered(self):
        result = decompose_orbifold(right_horizontal_prism(6))
        assert len(result.seifert_fibered) == 1
        assert result.trace[-1].action == "seifert-fibered"

    def test_cube_is_seifert_fibered(self, cube):
        result = decompose_orbifold(cube)
        assert len(result.seifert_fibered) == 1

    def test_dodecahedron_is_atoroidal(self, dodecahedron):
        result = decompose_orbifold(dodecahedron)
        assert result.seifert_fibered == []
        assert len(result.atoroidal) == 1
        assert result.trace[-1].action == "atoroidal"

    def test_single_euclidean_prism_splits_in_two(self):
        result = decompose_orbifold(single_euclidean_prism(6))
        assert len(result.atoroidal) == 2
        assert result.seifert_fibered == []
        assert is_isomorphic(*result.atoroidal)
        split = [step for step in result.trace if step.action == "split"]
        assert len(split) == 1
        assert (split[0].complexity_before, split[0].complexity_after) == (1, 0)

    def test_tetrahedron_violates_preconditions(self, tetrahedron):
        with pytest.raises(PreconditionViolated):
            decompose_orbifold(tetrahedron)

    def test_no_boundary_circuit_to_split_along(self):
        prism = single_euclidean_prism(6)
        (gamma,) = euclidean_4_circuits(prism)

        def bare(polyhedron, circuit, **kwargs):
            return tuple(
                NeighborhoodData(
                    base=circuit,
                    index=index,
                    members=(circuit,),
                    support=frozenset(circuit.faces),
                    boundary=(),
                )
                for index in (1, 2)
            )

        with patch("polyhedral_volume.core.decompose.neighborhoods", side_effect=bare):
            with pytest.raises(DecompositionError, match="no nontrivial circuit bounds"):
                decompose(prism)
        assert not gamma.trivial

    def test_step_budget(self):
        with pytest.raises(DecompositionError, match="budget"):
            decompose(single_euclidean_prism(6), step_budget=0)

    def test_randomized_run_matches(self):
        prism = single_euclidean_prism(8)
        canonical = decompose_orbifold(prism)
        shuffled = decompose_orbifold(prism, rng=random.Random(7))
        assert canonical.atoroidal_signature() == shuffled.atoroidal_signature()

    def test_to_dict(self):
        document = decompose_orbifold(single_euclidean_prism(6)).to_dict()
        assert [c["classification"] for c in document["components"]] == ["atoroidal"] * 2
        assert document["trace"][0]["action"] == "split"
        assert "labels" in document["components"][0]["polyhedron"]


class TestSphericalReduce:
    def test_gluing_is_undone(self):
        prism = uniform_prism(5, 3, 2, 4)
        truncated, _ = truncate_vertex(prism, 0)
        glued = _glued_prisms()
        pieces, used = spherical_reduce(glued, ("spherical", "euclidean", "hyperbolic"))
        assert len(used) == 1
        assert len(pieces) == 2
        assert all(is_isomorphic(piece, truncated) for piece in pieces)

    def test_only_requested_classes_are_used(self):
        glued = _glued_prisms()
        # the glued circuit sums to 11π/12, which is hyperbolic
        pieces, used = spherical_reduce(glued, ("spherical",))
        assert used == []
        assert pieces == [glued]

    def test_third_pi_octahedron_has_nothing_to_reduce(self):
        pieces, used = spherical_reduce(octahedron(THIRD_PI))
        assert used == []
        assert len(pieces) == 1



# ---------------------------------------------------------------------------
# Canonicity over a corpus of Coxeter inputs
# ---------------------------------------------------------------------------


def _glued(a, b, c):
    prism = uniform_prism(5, a, b, c)
    truncated, cap = truncate_vertex(prism, 0)
    return glue_along_triangles(truncated, cap, truncated, cap, name=f"glued-{a}-{b}-{c}")


CORPUS = {
    **{f"right-horizontal-{n}": (right_horizontal_prism, n) for n in range(4, 9)},
    **{f"single-euclidean-{n}": (single_euclidean_prism, n) for n in range(6, 9)},
    **{f"alternating-{n}": (alternating_prism, n) for n in range(5, 9)},
    **{f"labels-2-2-3-{n}": (lambda n: uniform_prism(n, 2, 2, 3), n) for n in range(4, 9)},
    "labels-2-3-2-5": (lambda n: uniform_prism(n, 2, 3, 2), 5),
    "labels-2-3-2-6": (lambda n: uniform_prism(n, 2, 3, 2), 6),
    "glued-2-3-2": (lambda _: _glued(2, 3, 2), None),
    "glued-2-2-3": (lambda _: _glued(2, 2, 3), None),
}


@pytest.fixture(params=sorted(CORPUS) + ["cube", "dodecahedron"])
def coxeter_input(request, cube, dodecahedron):
    if request.param == "cube":
        return cube
    if request.param == "dodecahedron":
        return dodecahedron
    build, n = CORPUS[request.param]
    return build(n)


def test_corpus_is_large_enough():
    assert len(CORPUS) + 2 >= 20


@pytest.mark.slow
def test_decomposition_descends_and_leaves_trivial_circuits(coxeter_input):
    result = decompose_orbifold(coxeter_input, strict_descent=True)
    for step in result.trace:
        if step.action == "split":
            assert step.complexity_after < step.complexity_before
    for piece in result.atoroidal:
        assert all(c.trivial for c in euclidean_4_circuits(piece))


@pytest.mark.slow
def test_atoroidal_components_are_canonical(coxeter_input):
    report = check_canonicity(coxeter_input, trials=20, seed=3, strict_descent=True)
    assert report.consistent
    assert report.distinct == 1
    assert report.trials == 20
