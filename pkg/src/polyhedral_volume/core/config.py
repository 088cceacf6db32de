"""Settings and polyhedron document schemas."""

import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any, Dict, List, Literal, Optional, Tuple

import yaml
from pydantic import (
    BaseModel,
    ConfigDict,
    Field,
    ValidationError,
    field_validator,
    model_validator,
)

from polyhedral_volume.core.angles import Angle, parse_pi_fraction
from polyhedral_volume.core.errors import InputError

if TYPE_CHECKING:
    from polyhedral_volume.core.polyhedron import LabeledPolyhedron

CONFIG_FILENAME = "pvol.yaml"


def _collect_extra_fields(model: BaseModel, path: str = "") -> List[str]:
    """Recursively collect paths to extra fields in a Pydantic model."""
    extras = []

    if hasattr(model, "model_extra") and model.model_extra:
        for key in model.model_extra:
            extras.append(f"{path}.{key}" if path else key)

    for field_name in type(model).model_fields:
        value = getattr(model, field_name)
        field_path = f"{path}.{field_name}" if path else field_name

        if isinstance(value, BaseModel):
            extras.extend(_collect_extra_fields(value, field_path))
        elif isinstance(value, list):
            for i, item in enumerate(value):
                if isinstance(item, BaseModel):
                    extras.extend(_collect_extra_fields(item, f"{field_path}.{i}"))

    return extras


def format_validation_errors(error: ValidationError) -> List[str]:
    """Render pydantic errors as ``loc: msg`` lines."""
    lines = []
    for item in error.errors():
        loc = ".".join(str(part) for part in item["loc"]) if item["loc"] else ""
        msg = item["msg"]
        if msg.startswith("Value error, "):
            msg = msg[len("Value error, ") :]
        lines.append(f"{loc}: {msg}" if loc else msg)
    return lines


def find_config_file(path: Path) -> Optional[Path]:
    """Return ``pvol.yaml`` in ``path`` if present; defaults apply otherwise."""
    candidate = path / CONFIG_FILENAME
    if candidate.exists():
        return candidate
    return None


class Settings(BaseModel):
    """Tunable numeric and output behaviour."""

    model_config = ConfigDict(extra="allow")

    tolerance: float = Field(
        default=1e-9,
        gt=0,
        description="Absolute band used when comparing floating label sums with multiples of π",
    )
    step_budget: int = Field(
        default=500, ge=1, description="Maximum number of decomposition iterations"
    )
    trials: int = Field(
        default=20, ge=1, description="Randomized choice orders used in canonicity checks"
    )
    seed: int = Field(default=0, description="Seed for randomized choice orders")
    quadrature_tolerance: float = Field(
        default=1e-12, gt=0, description="Absolute error target for quadrature"
    )
    digits: int = Field(
        default=9, ge=3, le=17, description="Significant digits in printed values"
    )
    output_format: Literal["human", "structured"] = Field(
        default="human", description="Default report format"
    )

    @classmethod
    def from_yaml(cls, path: Path) -> "Settings":
        """Load settings from YAML, exiting with status 2 on malformed input."""
        with open(path) as f:
            data = yaml.safe_load(f) or {}

        if not isinstance(data, dict):
            print(f"Error: {path.name} must contain a YAML mapping", file=sys.stderr)
            sys.exit(2)

        try:
            settings = cls(**data)
        except ValidationError as e:
            for line in format_validation_errors(e):
                print(f"Error: {line}", file=sys.stderr)
            sys.exit(2)

        for field_path in _collect_extra_fields(settings):
            print(
                f"Warning: Unknown config key '{field_path}' (ignored)", file=sys.stderr
            )
        return settings


class LabelEntry(BaseModel):
    """One dihedral-angle label: ``{edge: [u, v], pi_over: k}`` or ``radians``."""

    model_config = ConfigDict(extra="allow")

    edge: Tuple[int, int] = Field(description="Unordered vertex pair")
    pi_over: Optional[int] = Field(default=None, ge=1, description="Label π/k")
    pi_fraction: Optional[str] = Field(
        default=None, description="Label π·p/q written as 'p/q'"
    )
    radians: Optional[float] = Field(default=None, gt=0, description="Label in radians")

    @field_validator("edge")
    @classmethod
    def validate_edge(cls, v):
        u, w = v
        if u == w:
            raise ValueError(f"edge [{u}, {w}] is a loop")
        if u < 0 or w < 0:
            raise ValueError(f"edge [{u}, {w}] has a negative vertex index")
        return v

    @field_validator("pi_fraction")
    @classmethod
    def validate_pi_fraction(cls, v):
        if v is None:
            return v
        value = parse_pi_fraction(v)
        if value <= 0:
            raise ValueError(f"pi_fraction must be positive, got '{v}'")
        return v

    @model_validator(mode="after")
    def exactly_one_angle(self) -> "LabelEntry":
        given = [
            name
            for name in ("pi_over", "pi_fraction", "radians")
            if getattr(self, name) is not None
        ]
        if len(given) != 1:
            raise ValueError(
                "each label needs exactly one of pi_over, pi_fraction, radians "
                f"(edge {list(self.edge)} has {len(given)})"
            )
        return self

    def angle(self) -> Angle:
        if self.pi_over is not None:
            return Angle.pi_over(self.pi_over)
        if self.pi_fraction is not None:
            return Angle.from_pi_fraction(self.pi_fraction)
        return Angle.from_radians(self.radians)

    @classmethod
    def from_angle(cls, edge: Tuple[int, int], angle: Angle) -> "LabelEntry":
        order = angle.coxeter_order()
        if order is not None:
            return cls(edge=edge, pi_over=order)
        if angle.exact:
            return cls(edge=edge, pi_fraction=str(angle.pi_fraction))
        return cls(edge=edge, radians=angle.radians)


class PolyhedronDocument(BaseModel):
    """On-disk form of a labeled polyhedron."""

    model_config = ConfigDict(extra="allow")

    name: str = Field(default="", description="Free-form name")
    description: str = Field(default="", description="One-line summary shown by the catalog")
    vertices: int = Field(ge=1, description="Vertex count")
    faces: List[List[int]] = Field(
        description="Faces as cyclic vertex lists, consistently oriented"
    )
    labels: List[LabelEntry] = Field(default_factory=list)
    default_pi_over: Optional[int] = Field(
        default=None, ge=2, description="Label π/k for every edge not listed in labels"
    )

    @model_validator(mode="after")
    def validate_indices(self) -> "PolyhedronDocument":
        for i, face in enumerate(self.faces):
            for v in face:
                if not 0 <= v < self.vertices:
                    raise ValueError(
                        f"faces[{i}] uses vertex {v} outside 0..{self.vertices - 1}"
                    )
        seen: Dict[Tuple[int, int], int] = {}
        for i, entry in enumerate(self.labels):
            key = tuple(sorted(entry.edge))
            for v in key:
                if v >= self.vertices:
                    raise ValueError(
                        f"labels[{i}] uses vertex {v} outside 0..{self.vertices - 1}"
                    )
            if key in seen:
                raise ValueError(
                    f"labels[{i}]: edge {list(key)} already labeled "
                    f"(first seen at index {seen[key]})"
                )
            seen[key] = i
        return self

    @classmethod
    def from_mapping(cls, data: Any, source: str = "document") -> "PolyhedronDocument":
        if not isinstance(data, dict):
            raise InputError(f"{source} must contain a mapping")
        try:
            return cls(**data)
        except ValidationError as e:
            raise InputError("\n".join(format_validation_errors(e))) from e

    @classmethod
    def from_yaml(cls, path: Path) -> "PolyhedronDocument":
        """Load a document from YAML or JSON."""
        try:
            with open(path) as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise InputError(f"{path}: {e}") from e
        return cls.from_mapping(data, source=str(path))

    def label_map(self) -> Dict[Tuple[int, int], Angle]:
        labels = {}
        if self.default_pi_over is not None:
            fallback = Angle.pi_over(self.default_pi_over)
            for face in self.faces:
                for u, v in zip(face, face[1:] + face[:1]):
                    labels[(min(u, v), max(u, v))] = fallback
        labels.update({tuple(sorted(entry.edge)): entry.angle() for entry in self.labels})
        return labels

    def to_polyhedron(self, **kwargs) -> "LabeledPolyhedron":
        from polyhedral_volume.core.polyhedron import build_polyhedron

        return build_polyhedron(
            self.vertices,
            [tuple(face) for face in self.faces],
            self.label_map(),
            name=self.name,
            **kwargs,
        )

    @classmethod
    def from_polyhedron(cls, polyhedron: "LabeledPolyhedron") -> "PolyhedronDocument":
        return cls(
            name=polyhedron.name,
            vertices=polyhedron.vertex_count,
            faces=[list(face) for face in polyhedron.faces],
            labels=[
                LabelEntry.from_angle(edge, polyhedron.labels[edge])
                for edge in polyhedron.edges
            ],
        )

    def to_yaml(self) -> str:
        """Serialise with inner lists in flow style."""
        data = self.model_dump(exclude_none=True)
        for key in ("name", "description"):
            if not data.get(key):
                data.pop(key, None)

        class FlowListDumper(yaml.SafeDumper):
            pass

        def represent_list(dumper, value):
            flow = all(isinstance(item, (int, float)) for item in value)
            return dumper.represent_sequence(
                "tag:yaml.org,2002:seq", value, flow_style=flow
            )

        def represent_label(dumper, value):
            return dumper.represent_mapping(
                "tag:yaml.org,2002:map", value.items(), flow_style=True
            )

        FlowListDumper.add_representer(list, represent_list)
        FlowListDumper.add_representer(tuple, represent_list)
        data["labels"] = [_LabelMapping(entry) for entry in data["labels"]]
        FlowListDumper.add_representer(_LabelMapping, represent_label)
        return yaml.dump(data, Dumper=FlowListDumper, sort_keys=False)


class _LabelMapping(dict):
    """Marker type so label entries are dumped on one line."""
