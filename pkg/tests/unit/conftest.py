"""Shared polyhedra for unit tests."""

import pytest

from polyhedral_volume.core.catalog import load_document, load_polyhedron
from polyhedral_volume.core.polyhedron import build_polyhedron

OCTAHEDRON_FACES = [
    (0, 1, 2),
    (0, 2, 3),
    (0, 3, 4),
    (0, 4, 1),
    (5, 2, 1),
    (5, 3, 2),
    (5, 4, 3),
    (5, 1, 4),
]


def uniform_labels(faces, angle):
    """Label every edge of ``faces`` with ``angle``."""
    labels = {}
    for face in faces:
        for u, v in zip(face, face[1:] + face[:1]):
            labels[(min(u, v), max(u, v))] = angle
    return labels


def octahedron(angle):
    labels = uniform_labels(OCTAHEDRON_FACES, angle)
    return build_polyhedron(6, OCTAHEDRON_FACES, labels, name="octahedron")


def builtin_with_default(name, pi_over):
    """A built-in polyhedron relabeled with π/pi_over on every edge."""
    document = load_document(f"@{name}").model_copy(update={"default_pi_over": pi_over})
    return document.to_polyhedron()


@pytest.fixture
def cube():
    return load_polyhedron("@cube")


@pytest.fixture
def dodecahedron():
    return load_polyhedron("@dodecahedron")


@pytest.fixture
def triangular_prism():
    return load_polyhedron("@triangular-prism")


@pytest.fixture
def pentagonal_prism():
    return load_polyhedron("@pentagonal-prism")


@pytest.fixture
def tetrahedron():
    return load_polyhedron("@tetrahedron")


@pytest.fixture
def right_octahedron():
    from polyhedral_volume.core.angles import RIGHT_ANGLE

    return octahedron(RIGHT_ANGLE)
