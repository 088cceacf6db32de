"""Built-in polyhedra and component fixtures.

Loads the YAML documents shipped under ``catalog/`` and resolves input
arguments: a leading ``@`` names a catalog entry, anything else is a path.
"""

import logging
from pathlib import Path
from typing import Dict, List, Union

from polyhedral_volume.core.bounds import ComponentFixture
from polyhedral_volume.core.config import PolyhedronDocument
from polyhedral_volume.core.errors import InputError
from polyhedral_volume.core.polyhedron import LabeledPolyhedron

logger = logging.getLogger(__name__)

_CATALOG_DIR = Path(__file__).parent.parent / "catalog"
_COMPONENTS_DIR = _CATALOG_DIR / "components"

BUILTIN_PREFIX = "@"


class CatalogEntry:
    """A built-in polyhedron document, parsed on first use."""

    def __init__(self, name: str, path: Path):
        self.name = name
        self.path = path
        self._document = None

    @property
    def document(self) -> PolyhedronDocument:
        if self._document is None:
            self._document = PolyhedronDocument.from_yaml(self.path)
        return self._document

    @property
    def description(self) -> str:
        return self.document.description

    def __repr__(self):
        return f"CatalogEntry(name={self.name!r}, path={str(self.path)!r})"


def _scan(directory: Path) -> Dict[str, Path]:
    if not directory.is_dir():
        return {}
    return {path.stem: path for path in sorted(directory.glob("*.yaml"))}


def load_catalog() -> Dict[str, CatalogEntry]:
    """Every built-in polyhedron keyed by name."""
    return {name: CatalogEntry(name, path) for name, path in _scan(_CATALOG_DIR).items()}


def component_fixtures() -> Dict[str, Path]:
    return _scan(_COMPONENTS_DIR)


def _builtin(source: str, entries: Dict[str, object], what: str):
    name = source[len(BUILTIN_PREFIX) :]
    if name not in entries:
        available = ", ".join(sorted(entries)) or "none"
        raise InputError(f"unknown built-in {what} '{name}' (available: {available})")
    return entries[name]


def load_document(source: Union[str, Path]) -> PolyhedronDocument:
    """Parse a polyhedron document from a path or ``@name``."""
    if isinstance(source, str) and source.startswith(BUILTIN_PREFIX):
        return _builtin(source, load_catalog(), "polyhedron").document
    path = Path(source)
    if not path.is_file():
        raise InputError(f"{path}: no such file")
    document = PolyhedronDocument.from_yaml(path)
    extras = sorted(document.model_extra or {})
    if extras:
        logger.warning("%s: unknown keys %s ignored", path, extras)
    return document


def load_polyhedron(source: Union[str, Path]) -> LabeledPolyhedron:
    """Load and validate a labeled polyhedron from a path or ``@name``.

    Raises:
        InputError: Missing file, unknown built-in, or schema errors.
        PolyhedronError: The document is not a valid labeled polyhedron.
    """
    polyhedron = load_document(source).to_polyhedron()
    logger.debug(
        "loaded %s: %d vertices, %d faces",
        polyhedron.name or source,
        polyhedron.vertex_count,
        polyhedron.face_count,
    )
    return polyhedron


def load_components(source: Union[str, Path]) -> ComponentFixture:
    if isinstance(source, str) and source.startswith(BUILTIN_PREFIX):
        return ComponentFixture.from_yaml(_builtin(source, component_fixtures(), "fixture"))
    path = Path(source)
    if not path.is_file():
        raise InputError(f"{path}: no such file")
    return ComponentFixture.from_yaml(path)


def to_document(polyhedron: LabeledPolyhedron) -> PolyhedronDocument:
    return PolyhedronDocument.from_polyhedron(polyhedron)


def dump_document(polyhedron: LabeledPolyhedron) -> str:
    """YAML text for ``polyhedron``; exact labels are written as ``pi_over`` or ``pi_fraction``."""
    return to_document(polyhedron).to_yaml()


def catalog_names() -> List[str]:
    return sorted(load_catalog())
