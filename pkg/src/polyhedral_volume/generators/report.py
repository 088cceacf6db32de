"""Render reports as human-readable text or structured YAML."""

from typing import Any, Dict, Mapping, Optional, Sequence

import yaml
from jinja2 import Environment, PackageLoader
from pydantic import BaseModel

from polyhedral_volume.core.andreev import RealizabilityReport
from polyhedral_volume.core.bounds import BoundReport
from polyhedral_volume.core.decompose import CanonicityReport, DecompositionResult


def _format_number(value: Any, digits: int) -> Any:
    if isinstance(value, float):
        return f"{value:.{digits}g}"
    return value


def _format_circuit(edges: Sequence[Sequence[int]]) -> str:
    return "{" + ", ".join(f"{u}-{v}" for u, v in edges) + "}"


def _environment(digits: int) -> Environment:
    env = Environment(
        loader=PackageLoader("polyhedral_volume", "templates"),
        trim_blocks=True,
        lstrip_blocks=True,
        keep_trailing_newline=True,
    )
    env.filters["num"] = lambda value: _format_number(value, digits)
    env.filters["circuit"] = _format_circuit
    return env


def render(template: str, digits: int = 9, **context) -> str:
    return _environment(digits).get_template(template).render(**context)


def render_realizability(report: RealizabilityReport, digits: int = 9) -> str:
    return render("realizability.txt.j2", digits, report=report)


def render_decomposition(
    result: DecompositionResult,
    name: str,
    canonicity: Optional[CanonicityReport] = None,
    digits: int = 9,
) -> str:
    return render(
        "decomposition.txt.j2", digits, result=result, name=name, canonicity=canonicity
    )


def render_bounds(report: BoundReport, digits: int = 9) -> str:
    return render("bounds.txt.j2", digits, report=report)


def render_value(
    title: str, value: float, details: Optional[Mapping[str, Any]] = None, digits: int = 9
) -> str:
    return render("value.txt.j2", digits, title=title, value=value, details=dict(details or {}))


def _round_floats(data: Any, digits: int) -> Any:
    if isinstance(data, float):
        return float(f"{data:.{digits}g}")
    if isinstance(data, dict):
        return {str(k): _round_floats(v, digits) for k, v in data.items()}
    if isinstance(data, (list, tuple)):
        return [_round_floats(v, digits) for v in data]
    return data


def to_structured(data: Any, digits: int = 9) -> str:
    """YAML with sorted keys and floats cut to ``digits`` significant digits."""
    if isinstance(data, BaseModel):
        data = data.model_dump()
    return yaml.safe_dump(_round_floats(data, digits), sort_keys=True, allow_unicode=True)


def value_document(title: str, value: float, details: Optional[Dict[str, Any]] = None) -> Dict:
    return {"quantity": title, "value": value, **(details or {})}
