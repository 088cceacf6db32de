"""Tests for built-in polyhedra and input resolution."""

import logging

import pytest

from polyhedral_volume.core.catalog import (
    catalog_names,
    component_fixtures,
    dump_document,
    load_catalog,
    load_components,
    load_document,
    load_polyhedron,
)
from polyhedral_volume.core.errors import InputError
from polyhedral_volume.core.polyhedron import is_isomorphic
from polyhedral_volume.generators.prism import alternating_prism


def test_catalog_names():
    """Test that the shipped polyhedra are listed."""
    assert catalog_names() == [
        "cube",
        "dodecahedron",
        "pentagonal-prism",
        "tetrahedron",
        "triangular-prism",
    ]


def test_every_entry_loads():
    """Test that each built-in document parses and has a description."""
    for name, entry in load_catalog().items():
        polyhedron = load_polyhedron(f"@{name}")
        assert polyhedron.name == name
        assert entry.description


def test_unknown_builtin():
    """Test that an unknown @name lists the available entries."""
    with pytest.raises(InputError, match="available: cube"):
        load_polyhedron("@icosahedron")


def test_missing_file(tmp_path):
    """Test that a missing path is an input error."""
    with pytest.raises(InputError, match="no such file"):
        load_document(tmp_path / "absent.yaml")


def test_unknown_keys_warn(tmp_path, caplog):
    """Test that extra document keys are logged and ignored."""
    path = tmp_path / "prism.yaml"
    path.write_text(dump_document(alternating_prism(5)) + "colour: red\n")
    with caplog.at_level(logging.WARNING):
        document = load_document(path)
    assert document.vertices == 10
    assert "unknown keys ['colour']" in caplog.text


def test_dump_and_reload(tmp_path):
    """Test that a dumped polyhedron reloads to the same labeled graph."""
    prism = alternating_prism(6)
    path = tmp_path / "prism.yaml"
    path.write_text(dump_document(prism))
    assert is_isomorphic(load_polyhedron(path), prism)


def test_component_fixtures():
    """Test that the shipped component fixture is found and parsed."""
    assert "two-turnovers" in component_fixtures()
    fixture = load_components("@two-turnovers")
    assert fixture.name == "two-turnovers"
    assert [c.kind for c in fixture.components] == [
        "prism",
        "right-angled",
        "right-angled",
        "prism-region",
        "prism-region",
    ]


def test_unknown_component_fixture():
    """Test that unknown fixtures are rejected."""
    with pytest.raises(InputError, match="unknown built-in fixture"):
        load_components("@missing")
