"""Tests for text and structured report rendering."""

import math

import yaml

from polyhedral_volume.core.andreev import check_andreev
from polyhedral_volume.core.bounds import estimate, estimate_from_components
from polyhedral_volume.core.catalog import load_components
from polyhedral_volume.core.decompose import decompose_orbifold
from polyhedral_volume.generators.prism import single_euclidean_prism
from polyhedral_volume.generators.report import (
    render_bounds,
    render_decomposition,
    render_realizability,
    render_value,
    to_structured,
    value_document,
)


def test_realizability_failure(cube):
    """Test that failed conditions and their witnesses are listed."""
    text = render_realizability(check_andreev(cube))
    assert text.startswith("cube: NOT realizable (finite-volume)")
    assert "violated: A5" in text
    assert "[FAIL] A5" in text
    assert "[pass] A1" in text


def test_realizability_success(dodecahedron):
    """Test that vertex types are grouped."""
    text = render_realizability(check_andreev(dodecahedron))
    assert "realizable (finite-volume)" in text
    assert "finite volume: yes" in text
    assert "finite (20):" in text
    assert "Decided within tolerance" not in text


def test_decomposition():
    """Test the component list and the trace."""
    result = decompose_orbifold(single_euclidean_prism(6))
    text = render_decomposition(result, "single")
    assert text.startswith("single: 0 Seifert-fibered, 2 atoroidal")
    assert "split" in text
    assert "(complexity 1 -> 0)" in text


def test_bounds(dodecahedron):
    """Test the bound summary and the contribution table."""
    text = render_bounds(estimate(dodecahedron), digits=6)
    assert "lower = 3/8·V8" in text
    assert "no-prismatic-4-circuit-lower" in text
    assert "Upper bound candidates:" in text
    assert "N=20" in text


def test_bounds_notes():
    """Test that disagreements between stated and formula values are noted."""
    text = render_bounds(estimate_from_components(load_components("@two-turnovers")))
    assert "Notes:" in text
    assert "atoroidal-mixed" in text


def test_value():
    """Test a single value with details."""
    text = render_value("vol C1(π·1/3)", 0.32442345, {"mu": math.pi / 3}, digits=4)
    assert text.splitlines()[0] == "vol C1(π·1/3) = 0.3244"
    assert "  mu: 1.047" in text


def test_structured_rounds_floats():
    """Test that structured output is YAML with rounded floats."""
    document = value_document("Λ(π·1/6)", 0.50747080320, {"theta": math.pi / 6})
    data = yaml.safe_load(to_structured(document, digits=5))
    assert data == {"quantity": "Λ(π·1/6)", "value": 0.50747, "theta": 0.5236}


def test_structured_accepts_models(dodecahedron):
    """Test that pydantic reports are dumped through model_dump."""
    data = yaml.safe_load(to_structured(estimate(dodecahedron)))
    assert data["lower_exact"] == "3/8·V8"
    assert data["counts"]["N"] == 20
