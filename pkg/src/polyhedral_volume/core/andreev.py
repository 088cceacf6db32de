"""Realizability of labeled polyhedra as non-obtuse hyperbolic polyhedra.

Two checkers share the condition implementations below. ``check_andreev``
decides realizability as a finite-volume polyhedron (conditions A1-A7);
``check_generalized`` decides realizability as a generalized polyhedron,
where vertices with hyperbolic links are hyperideal (conditions G1-G3).
"""

import logging
from typing import Dict, List, Literal

from pydantic import BaseModel, Field

from polyhedral_volume.core.angles import (
    DEFAULT_TOLERANCE,
    RIGHT_ANGLE,
    angle_sum,
    compare_with_pi,
)
from polyhedral_volume.core.circuits import Circuit, enumerate_prismatic_circuits
from polyhedral_volume.core.errors import IsTriangularPrism, ObtuseLabel, TooFewVertices
from polyhedral_volume.core.polyhedron import (
    LabeledPolyhedron,
    edge_key,
    prism_structure,
    vertex_angle_sum,
    vertex_link,
)

logger = logging.getLogger(__name__)

VertexType = Literal["finite", "ideal", "hyperideal"]

_LINK_TO_TYPE: Dict[str, VertexType] = {
    "spherical": "finite",
    "euclidean": "ideal",
    "hyperbolic": "hyperideal",
}


class ConditionResult(BaseModel):
    """Outcome of one numbered condition with every witness found."""

    id: str = Field(description="Condition identifier, e.g. A5 or G1")
    description: str
    passed: bool
    witnesses: List[str] = Field(default_factory=list)


class RealizabilityReport(BaseModel):
    """Verdict of a realizability check."""

    kind: Literal["finite-volume", "generalized"]
    name: str = ""
    realizable: bool
    violated_conditions: List[str] = Field(default_factory=list)
    conditions: List[ConditionResult] = Field(default_factory=list)
    vertex_types: Dict[int, VertexType] = Field(default_factory=dict)
    finite_volume: bool
    tolerance_flags: List[str] = Field(default_factory=list)

    def condition(self, condition_id: str) -> ConditionResult:
        return next(c for c in self.conditions if c.id == condition_id)

    def vertices_of_type(self, vertex_type: VertexType) -> List[int]:
        return [v for v, t in self.vertex_types.items() if t == vertex_type]


def _describe_circuit(circuit: Circuit) -> str:
    crossed = ", ".join(f"{u}-{v}" for u, v in circuit.crossed_edges)
    return f"faces {list(circuit.faces)} crossing {crossed} (sum {circuit.label_sum})"


def _check_preconditions(polyhedron: LabeledPolyhedron, tolerance: float) -> None:
    if polyhedron.vertex_count <= 4:
        raise TooFewVertices(
            f"realizability needs more than 4 vertices, got {polyhedron.vertex_count}"
        )
    for e, angle in polyhedron.labels.items():
        if angle.compare(RIGHT_ANGLE, tolerance) > 0:
            raise ObtuseLabel(f"label {angle} on edge {list(e)} exceeds π/2")


def _vertex_types(
    polyhedron: LabeledPolyhedron, tolerance: float, flags: List[str]
) -> Dict[int, VertexType]:
    types: Dict[int, VertexType] = {}
    for v in range(polyhedron.vertex_count):
        geometry, in_band = vertex_link(polyhedron, v, tolerance)
        types[v] = _LINK_TO_TYPE[geometry]
        if in_band:
            flags.append(f"vertex {v}: angle sum decided within tolerance")
    return types


def _degree_condition(polyhedron: LabeledPolyhedron) -> ConditionResult:
    bad = [v for v in range(polyhedron.vertex_count) if polyhedron.degree(v) not in (3, 4)]
    return ConditionResult(
        id="A1",
        description="every vertex has degree 3 or 4",
        passed=not bad,
        witnesses=[f"vertex {v}" for v in bad],
    )


def _degree3_sum_condition(polyhedron: LabeledPolyhedron, tolerance: float) -> ConditionResult:
    witnesses = []
    for v in range(polyhedron.vertex_count):
        if polyhedron.degree(v) != 3:
            continue
        total = vertex_angle_sum(polyhedron, v)
        if compare_with_pi(total, 1, tolerance).sign < 0:
            witnesses.append(f"vertex {v} (sum {total})")
    return ConditionResult(
        id="A2",
        description="labels at each degree-3 vertex sum to at least π",
        passed=not witnesses,
        witnesses=witnesses,
    )


def _degree4_sum_condition(polyhedron: LabeledPolyhedron, tolerance: float) -> ConditionResult:
    witnesses = []
    for v in range(polyhedron.vertex_count):
        if polyhedron.degree(v) != 4:
            continue
        total = vertex_angle_sum(polyhedron, v)
        if compare_with_pi(total, 2, tolerance).sign != 0:
            witnesses.append(f"vertex {v} (sum {total})")
    return ConditionResult(
        id="A3",
        description="labels at each degree-4 vertex sum to 2π",
        passed=not witnesses,
        witnesses=witnesses,
    )


def _circuit_condition(
    condition_id: str,
    circuits: List[Circuit],
    bound: str,
    flags: List[str],
) -> ConditionResult:
    witnesses = []
    for circuit in circuits:
        if circuit.in_band:
            flags.append(f"{condition_id}: {_describe_circuit(circuit)} decided within tolerance")
        if circuit.geometry != "hyperbolic":
            witnesses.append(_describe_circuit(circuit))
    k = circuits[0].length if circuits else (3 if bound == "π" else 4)
    return ConditionResult(
        id=condition_id,
        description=f"labels on each prismatic {k}-circuit sum to less than {bound}",
        passed=not witnesses,
        witnesses=witnesses,
    )


def _triangular_prism_condition(polyhedron: LabeledPolyhedron, tolerance: float) -> ConditionResult:
    structure = prism_structure(polyhedron)
    witnesses = []
    if structure is not None and structure.n == 3:
        total = angle_sum(polyhedron.labels[e] for e in structure.a_edges + structure.b_edges)
        if compare_with_pi(total, 3, tolerance).sign >= 0:
            witnesses.append(
                f"triangular faces {structure.top} and {structure.bottom} (sum {total})"
            )
    return ConditionResult(
        id="A6",
        description="on a triangular prism the labels of the triangular faces sum to less than 3π",
        passed=not witnesses,
        witnesses=witnesses,
    )


def _ideal_vertex_condition(
    condition_id: str,
    polyhedron: LabeledPolyhedron,
    vertex_types: Dict[int, VertexType],
    tolerance: float,
) -> ConditionResult:
    """Faces F_i, F_k meeting only in an ideal vertex v, both adjacent to F_j.

    The labels of F_i ∩ F_j and F_j ∩ F_k must sum to less than π when
    neither edge contains v.
    """
    sets = polyhedron.face_vertex_sets
    adjacent = {f: set() for f in range(polyhedron.face_count)}
    shared_edge = {}
    for e, (f, g) in polyhedron.edge_faces.items():
        adjacent[f].add(g)
        adjacent[g].add(f)
        shared_edge[edge_key(f, g)] = e

    witnesses = []
    for v, vertex_type in vertex_types.items():
        if vertex_type != "ideal":
            continue
        around = polyhedron.vertex_rotation(v)
        for i, fi in enumerate(around):
            for fk in around[i + 1 :]:
                if sets[fi] & sets[fk] != {v}:
                    continue
                for fj in sorted(adjacent[fi] & adjacent[fk]):
                    e_ij = shared_edge[edge_key(fi, fj)]
                    e_jk = shared_edge[edge_key(fj, fk)]
                    if v in e_ij or v in e_jk:
                        continue
                    total = polyhedron.labels[e_ij] + polyhedron.labels[e_jk]
                    if compare_with_pi(total, 1, tolerance).sign >= 0:
                        witnesses.append(
                            f"faces ({fi}, {fj}, {fk}) at ideal vertex {v} (sum {total})"
                        )
    return ConditionResult(
        id=condition_id,
        description=(
            "when two faces meet in a single ideal vertex, two edges joining them "
            "through a third face have labels summing to less than π"
        ),
        passed=not witnesses,
        witnesses=witnesses,
    )


def check_andreev(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> RealizabilityReport:
    """Check realizability as a finite-volume non-obtuse hyperbolic polyhedron.

    Raises:
        TooFewVertices: The polyhedron has 4 or fewer vertices.
        ObtuseLabel: Some label exceeds π/2.
    """
    _check_preconditions(polyhedron, tolerance)
    flags: List[str] = []
    vertex_types = _vertex_types(polyhedron, tolerance, flags)
    circuits3 = enumerate_prismatic_circuits(polyhedron, 3, tolerance=tolerance)
    circuits4 = enumerate_prismatic_circuits(polyhedron, 4, tolerance=tolerance)

    conditions = [
        _degree_condition(polyhedron),
        _degree3_sum_condition(polyhedron, tolerance),
        _degree4_sum_condition(polyhedron, tolerance),
        _circuit_condition("A4", circuits3, "π", flags),
        _circuit_condition("A5", circuits4, "2π", flags),
        _triangular_prism_condition(polyhedron, tolerance),
        _ideal_vertex_condition("A7", polyhedron, vertex_types, tolerance),
    ]
    violated = [c.id for c in conditions if not c.passed]
    realizable = not violated
    report = RealizabilityReport(
        kind="finite-volume",
        name=polyhedron.name,
        realizable=realizable,
        violated_conditions=violated,
        conditions=conditions,
        vertex_types=vertex_types,
        finite_volume=realizable and "hyperideal" not in vertex_types.values(),
        tolerance_flags=flags,
    )
    for flag in flags:
        logger.warning("%s: %s", polyhedron.name or "polyhedron", flag)
    return report


def check_generalized(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> RealizabilityReport:
    """Check realizability as a generalized hyperbolic polyhedron.

    Raises:
        TooFewVertices: The polyhedron has 4 or fewer vertices.
        ObtuseLabel: Some label exceeds π/2.
        IsTriangularPrism: The triangular prism is excluded from generalized realizability.
    """
    _check_preconditions(polyhedron, tolerance)
    structure = prism_structure(polyhedron)
    if structure is not None and structure.n == 3:
        raise IsTriangularPrism("the generalized checker does not apply to the triangular prism")

    flags: List[str] = []
    vertex_types = _vertex_types(polyhedron, tolerance, flags)
    circuits3 = enumerate_prismatic_circuits(polyhedron, 3, tolerance=tolerance)
    circuits4 = enumerate_prismatic_circuits(polyhedron, 4, tolerance=tolerance)
    conditions = [
        _circuit_condition("G1", circuits3, "π", flags),
        _circuit_condition("G2", circuits4, "2π", flags),
        _ideal_vertex_condition("G3", polyhedron, vertex_types, tolerance),
    ]
    violated = [c.id for c in conditions if not c.passed]
    realizable = not violated
    for flag in flags:
        logger.warning("%s: %s", polyhedron.name or "polyhedron", flag)
    return RealizabilityReport(
        kind="generalized",
        name=polyhedron.name,
        realizable=realizable,
        violated_conditions=violated,
        conditions=conditions,
        vertex_types=vertex_types,
        finite_volume=realizable and "hyperideal" not in vertex_types.values(),
        tolerance_flags=flags,
    )
