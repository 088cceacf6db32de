"""Tests for the volume bound formulas and the estimator."""

import logging
from fractions import Fraction

import pytest

from polyhedral_volume.core.bounds import (
    CLAMPED,
    EXCEPTIONAL,
    ZERO,
    ComponentEntry,
    ComponentFixture,
    LinearVolume,
    corollary_bounds,
    estimate,
    estimate_from_components,
    general_upper,
    ideal_upper,
    lower_no_prismatic4,
    lower_with_m3,
    pi3_lower,
    prism_lower,
    prism_region_lower,
    prism_upper,
    right_angled_lower,
    weak_upper,
)
from polyhedral_volume.core.catalog import load_components
from polyhedral_volume.core.errors import (
    HypothesisViolated,
    InputError,
    NotRealizable,
    OddVertexCount,
)
from polyhedral_volume.core.numerics import (
    alternating_prism_volume,
    c1_third,
    c1_volume,
    v3,
    v8,
)
from polyhedral_volume.generators.prism import alternating_prism

from .conftest import builtin_with_default


# ---------------------------------------------------------------------------
# Exact combinations
# ---------------------------------------------------------------------------


class TestLinearVolume:
    def test_value(self):
        volume = LinearVolume(v8=Fraction(1, 2), v3=Fraction(2), c1=Fraction(3))
        expected = v8() / 2 + 2 * v3() + 3 * c1_third()
        assert volume.value == pytest.approx(expected)

    def test_str(self):
        assert str(ZERO) == "0"
        assert str(LinearVolume(v8=Fraction(1))) == "V8"
        assert str(LinearVolume(v8=Fraction(3, 8))) == "3/8·V8"
        assert str(LinearVolume(v8=Fraction(34), v3=Fraction(15, 4))) == "34·V8 + 15/4·V3"

    def test_add_and_scale(self):
        total = LinearVolume(v8=Fraction(1, 4)) + LinearVolume(c1=Fraction(2))
        assert total == LinearVolume(v8=Fraction(1, 4), c1=Fraction(2))
        assert total.scaled(4) == LinearVolume(v8=Fraction(1), c1=Fraction(8))
        assert ZERO.is_zero
        assert not total.is_zero


class TestFormulas:
    def test_no_prismatic_4_circuit_lower(self):
        assert lower_no_prismatic4(0, 20) == LinearVolume(v8=Fraction(3, 8))
        assert lower_with_m3(0, 20, 4) == LinearVolume(v8=Fraction(1, 2))

    def test_right_angled_lower(self):
        assert right_angled_lower(6, 0) == LinearVolume(v8=Fraction(1, 2))
        assert right_angled_lower(0, 22) == LinearVolume(v8=Fraction(7, 16))

    def test_small_angle_lower(self):
        assert pi3_lower(20, 0) == LinearVolume(v3=Fraction(15, 2))
        with pytest.raises(HypothesisViolated):
            pi3_lower(7, 0)

    def test_prism_sandwich(self):
        assert prism_lower(6) == LinearVolume(c1=Fraction(3))
        assert prism_upper(6) == LinearVolume(v8=Fraction(7))
        with pytest.raises(HypothesisViolated):
            prism_lower(3)

    def test_uppers(self):
        assert general_upper(6, 63, 6, 0) == LinearVolume(v8=Fraction(34), v3=Fraction(15, 4))
        assert ideal_upper(6) == LinearVolume(v8=Fraction(1))
        assert weak_upper(0, 20) == LinearVolume(v8=Fraction(29, 2), v3=Fraction(75, 4))

    @pytest.mark.parametrize("n", range(5, 11))
    def test_alternating_prism_is_sandwiched(self, n):
        volume = alternating_prism_volume(n)
        assert prism_lower(n).value < volume < prism_upper(n).value
        assert volume / (n - 3) > c1_third()

    def test_corollary_bounds(self):
        lower, upper = corollary_bounds(8)
        assert lower == 0.0
        assert upper == pytest.approx(30.2809, abs=1e-4)


class TestPrismRegion:
    def test_large_regions_use_c1(self):
        assert prism_region_lower(12) == LinearVolume(c1=Fraction(3))
        assert prism_region_lower(10) == LinearVolume(c1=Fraction(2))

    def test_small_regions_without_lambda_are_zero(self):
        assert prism_region_lower(6).is_zero
        assert prism_region_lower(8).is_zero

    def test_small_regions_with_known_lambda(self):
        assert prism_region_lower(6, lambda_known=0.5).value == pytest.approx(c1_volume(0.5))
        assert prism_region_lower(6, exceptional=True, lambda_known=0.5).is_zero

    @pytest.mark.parametrize("vertices", [2, 4, 6, 8])
    def test_small_regions_get_one_copy(self, vertices):
        region = prism_region_lower(vertices, lambda_known=0.7)
        assert region.value == pytest.approx(c1_volume(0.7))

    def test_odd_vertex_count(self):
        with pytest.raises(OddVertexCount):
            prism_region_lower(7)

    def test_too_small(self):
        with pytest.raises(HypothesisViolated):
            prism_region_lower(0)


# ---------------------------------------------------------------------------
# Estimator
# ---------------------------------------------------------------------------


class TestEstimate:
    def test_right_angled_dodecahedron(self, dodecahedron):
        report = estimate(dodecahedron)
        assert report.lower_exact == "3/8·V8"
        assert report.upper_exact == "13·V8"
        assert report.lower == pytest.approx(3 / 8 * v8())
        assert report.counts["N"] == 20
        assert report.counts["prismatic_4_circuits"] == 0
        assert report.breakdown[0].theorem == "no-prismatic-4-circuit-lower"

    def test_third_pi_dodecahedron_uses_small_angle_bound(self):
        report = estimate(builtin_with_default("dodecahedron", 3))
        assert report.lower_exact == "15/2·V3"
        assert report.breakdown[0].theorem == "small-angle-lower"

    def test_ideal_octahedron(self, right_octahedron):
        report = estimate(right_octahedron)
        assert report.lower_exact == "1/2·V8"
        assert report.upper_exact == "V8"
        assert report.lower <= report.upper

    def test_alternating_prism(self):
        report = estimate(alternating_prism(6))
        assert report.lower_exact == "3·C1"
        assert report.lower == pytest.approx(0.97327, abs=1e-5)
        assert report.upper == pytest.approx(7 * v8())
        theorems = {c.theorem for c in report.upper_candidates}
        assert "prism-upper" in theorems

    def test_cube_is_not_realizable(self, cube):
        with pytest.raises(NotRealizable) as excinfo:
            estimate(cube)
        assert excinfo.value.report is not None

    def test_pentagonal_prism_is_not_realizable(self, pentagonal_prism):
        with pytest.raises(NotRealizable):
            estimate(pentagonal_prism)

    def test_tetrahedron_is_out_of_scope(self, tetrahedron):
        with pytest.raises(HypothesisViolated):
            estimate(tetrahedron)


# ---------------------------------------------------------------------------
# Component fixtures
# ---------------------------------------------------------------------------


class TestComponents:
    def test_stated_contributions(self, caplog):
        fixture = load_components("@two-turnovers")
        with caplog.at_level(logging.WARNING):
            report = estimate_from_components(fixture)
        assert report.lower_exact == "2·V8 + 4·C1"
        assert report.lower == pytest.approx(8.6254, abs=1e-4)
        assert report.upper_exact == "34·V8 + 15/4·V3"
        assert report.upper == pytest.approx(128.377, abs=1e-3)
        assert len(report.flags) == 1
        assert "atoroidal-mixed" in report.flags[0]
        assert "differs from formula" in caplog.text

    def test_formula_contributions(self):
        report = estimate_from_components(load_components("@two-turnovers"), use_stated=False)
        assert report.lower_exact == "9/8·V8 + 4·C1"
        assert report.lower == pytest.approx(5.4195, abs=1e-4)
        assert report.counts == {"n2": 0, "n4": 6, "E33": 63, "E34": 6}

    def test_exceptional_region_is_flagged(self):
        report = estimate_from_components(load_components("@two-turnovers"))
        small = next(c for c in report.breakdown if c.component == "small-region")
        assert small.value == 0.0
        assert EXCEPTIONAL in small.flags

    def test_negative_formula_is_clamped(self):
        fixture = ComponentFixture(
            name="tiny",
            components=[
                {"name": "piece", "kind": "right-angled", "ideal_vertices": 0, "finite_vertices": 4}
            ],
            counts={"n2": 0, "n4": 0, "e33": 3, "e34": 0},
        )
        report = estimate_from_components(fixture)
        assert report.lower == 0.0
        assert CLAMPED in report.breakdown[0].flags

    def test_missing_fields(self):
        entry = ComponentEntry(name="p", kind="prism")
        with pytest.raises(InputError, match="needs n"):
            entry.formula()

    def test_from_yaml_rejects_bad_counts(self, tmp_path):
        path = tmp_path / "bad.yaml"
        path.write_text("components: []\ncounts:\n  n2: -1\n  n4: 0\n  e33: 0\n  e34: 0\n")
        with pytest.raises(InputError, match="counts.n2"):
            ComponentFixture.from_yaml(path)
