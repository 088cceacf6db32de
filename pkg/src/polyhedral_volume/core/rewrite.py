"""Graph rewrites used by the volume bounds: truncation, extension and full truncation."""

import logging
from dataclasses import dataclass
from typing import Dict, Iterable, List, Literal, Optional, Tuple

from polyhedral_volume.core.andreev import RealizabilityReport, check_andreev
from polyhedral_volume.core.angles import DEFAULT_TOLERANCE, RIGHT_ANGLE, THIRD_PI, Angle
from polyhedral_volume.core.circuits import Circuit, enumerate_prismatic_circuits
from polyhedral_volume.core.errors import HasPrismatic3Circuit, HypothesisViolated, NotCoxeter
from polyhedral_volume.core.polyhedron import (
    Edge,
    FaceKind,
    LabeledPolyhedron,
    build_polyhedron,
    cyclic_pairs,
    edge_key,
    vertex_link,
)
from polyhedral_volume.core.splitting import split_along

logger = logging.getLogger(__name__)


def _chain_cap(darts: Dict[int, int]) -> Tuple[int, ...]:
    start = min(darts)
    cap = [start]
    while len(cap) < len(darts):
        cap.append(darts[cap[-1]])
    return tuple(cap)


def truncate_vertices(
    polyhedron: LabeledPolyhedron,
    vertices: Iterable[int],
    *,
    kinds: Optional[Dict[int, FaceKind]] = None,
) -> LabeledPolyhedron:
    """Cut off each listed vertex by a new face labeled π/2 all round.

    Each cut vertex ``v`` is replaced by one new vertex per edge at ``v``;
    the new face is a triangle or quadrilateral matching the degree. Its
    kind defaults to ``triangle`` or ``quadrilateral`` and may be overridden
    per vertex.
    """
    cut = sorted(set(vertices))
    if not cut:
        return polyhedron
    cut_set = set(cut)
    kept = [v for v in range(polyhedron.vertex_count) if v not in cut_set]
    index = {v: i for i, v in enumerate(kept)}
    corner: Dict[Tuple[int, int], int] = {}
    for v in cut:
        for w in sorted(polyhedron.graph.neighbors(v)):
            corner[(v, w)] = len(kept) + len(corner)

    faces: List[Tuple[int, ...]] = []
    face_kinds: List[FaceKind] = []
    caps: Dict[int, Dict[int, int]] = {v: {} for v in cut}
    for face_index, face in enumerate(polyhedron.faces):
        n = len(face)
        new_face: List[int] = []
        for i, v in enumerate(face):
            if v in cut_set:
                before, after = corner[(v, face[i - 1])], corner[(v, face[(i + 1) % n])]
                new_face.extend((before, after))
                caps[v][after] = before
            else:
                new_face.append(index[v])
        faces.append(tuple(new_face))
        face_kinds.append(polyhedron.face_kinds[face_index])

    labels: Dict[Edge, Angle] = {}
    for (u, w), angle in polyhedron.labels.items():
        a = corner[(u, w)] if u in cut_set else index[u]
        b = corner[(w, u)] if w in cut_set else index[w]
        labels[edge_key(a, b)] = angle
    for v in cut:
        cap = _chain_cap(caps[v])
        faces.append(cap)
        default: FaceKind = "triangle" if len(cap) == 3 else "quadrilateral"
        face_kinds.append((kinds or {}).get(v, default))
        for x, y in cyclic_pairs(cap):
            labels[edge_key(x, y)] = RIGHT_ANGLE

    origin = [polyhedron.vertex_origin[v] for v in kept] + [None] * len(corner)
    return build_polyhedron(
        len(kept) + len(corner),
        faces,
        labels,
        name=polyhedron.name,
        non_obtuse=False,
        face_kinds=face_kinds,
        vertex_origin=origin,
    )


def hyperideal_vertices(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> List[int]:
    return [
        v
        for v in range(polyhedron.vertex_count)
        if vertex_link(polyhedron, v, tolerance)[0] == "hyperbolic"
    ]


def truncate(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> LabeledPolyhedron:
    """Truncate every vertex with a hyperbolic link."""
    targets = hyperideal_vertices(polyhedron, tolerance)
    if targets:
        logger.debug("truncating hyperideal vertices %s", targets)
    return truncate_vertices(polyhedron, targets)


def _collapsible_triangle(polyhedron: LabeledPolyhedron) -> Optional[int]:
    for face_index, face in enumerate(polyhedron.faces):
        if len(face) != 3 or any(polyhedron.degree(v) != 3 for v in face):
            continue
        outer = []
        for v in face:
            (w,) = [w for w in polyhedron.graph.neighbors(v) if w not in face]
            outer.append(w)
        if len(set(outer)) == 3:
            return face_index
    return None


def _collapse_triangle(polyhedron: LabeledPolyhedron, face_index: int) -> LabeledPolyhedron:
    triangle = set(polyhedron.faces[face_index])
    kept = [v for v in range(polyhedron.vertex_count) if v not in triangle]
    index = {v: i for i, v in enumerate(kept)}
    apex = len(kept)

    faces = []
    kinds: List[FaceKind] = []
    for i, face in enumerate(polyhedron.faces):
        if i == face_index:
            continue
        new_face: List[int] = []
        for v in face:
            mapped = apex if v in triangle else index[v]
            if not new_face or new_face[-1] != mapped:
                new_face.append(mapped)
        if len(new_face) > 1 and new_face[0] == new_face[-1]:
            new_face.pop()
        faces.append(tuple(new_face))
        kinds.append(polyhedron.face_kinds[i])

    labels: Dict[Edge, Angle] = {}
    for (u, w), angle in polyhedron.labels.items():
        if u in triangle and w in triangle:
            continue
        a = apex if u in triangle else index[u]
        b = apex if w in triangle else index[w]
        labels[edge_key(a, b)] = angle

    origin = [polyhedron.vertex_origin[v] for v in kept] + [None]
    return build_polyhedron(
        apex + 1,
        faces,
        labels,
        name=polyhedron.name,
        non_obtuse=False,
        face_kinds=kinds,
        vertex_origin=origin,
    )


def extend(polyhedron: LabeledPolyhedron) -> LabeledPolyhedron:
    """Collapse, one at a time, each triangle whose three outgoing edges are disjoint."""
    current = polyhedron
    while (face_index := _collapsible_triangle(current)) is not None:
        if current.vertex_count <= 4:
            break
        current = _collapse_triangle(current, face_index)
    return current


def truncate_and_extend(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> LabeledPolyhedron:
    return truncate(extend(polyhedron), tolerance)


@dataclass(frozen=True)
class TruncationCounts:
    n2: int
    n3: int
    n4: int
    e33: int
    e34: int

    @property
    def ideal_vertices(self) -> int:
        return self.n4 + self.e33

    @property
    def finite_vertices(self) -> int:
        return self.e34 + self.n2


@dataclass(frozen=True)
class FullTruncation:
    polyhedron: LabeledPolyhedron
    counts: TruncationCounts


def vertex_partition(polyhedron: LabeledPolyhedron) -> Tuple[List[int], List[int], List[int]]:
    """Return (N2, N3, N4).

    N4 holds the degree-4 vertices, N2 the degree-3 vertices whose neighbours
    are all in N4, and N3 every other degree-3 vertex.
    """
    n4 = [v for v in range(polyhedron.vertex_count) if polyhedron.degree(v) == 4]
    four = set(n4)
    n2 = [
        v
        for v in range(polyhedron.vertex_count)
        if v not in four and all(w in four for w in polyhedron.graph.neighbors(v))
    ]
    two = set(n2)
    n3 = [v for v in range(polyhedron.vertex_count) if v not in four and v not in two]
    return n2, n3, n4


def full_truncation(polyhedron: LabeledPolyhedron) -> FullTruncation:
    """Replace every N3 vertex by the triangle on its edge midpoints; all labels π/2.

    Midpoints of edges with both ends in N3 are shared by the two triangles
    and end up ideal (degree 4).
    """
    n2, n3, n4 = vertex_partition(polyhedron)
    three, four = set(n3), set(n4)
    e33 = [e for e in polyhedron.edges if e[0] in three and e[1] in three]
    e34 = [
        e
        for e in polyhedron.edges
        if (e[0] in three and e[1] in four) or (e[0] in four and e[1] in three)
    ]
    counts = TruncationCounts(n2=len(n2), n3=len(n3), n4=len(n4), e33=len(e33), e34=len(e34))

    kept = [v for v in range(polyhedron.vertex_count) if v not in three]
    index = {v: i for i, v in enumerate(kept)}
    midpoint: Dict[Edge, int] = {}
    for e in polyhedron.edges:
        if e[0] in three or e[1] in three:
            midpoint[e] = len(kept) + len(midpoint)

    faces: List[Tuple[int, ...]] = []
    kinds: List[FaceKind] = []
    triangles: Dict[int, Dict[int, int]] = {v: {} for v in n3}
    for face_index, face in enumerate(polyhedron.faces):
        n = len(face)
        new_face: List[int] = []
        for i, v in enumerate(face):
            if v in three:
                before = midpoint[edge_key(v, face[i - 1])]
                after = midpoint[edge_key(v, face[(i + 1) % n])]
                triangles[v][after] = before
                for x in (before, after):
                    if not new_face or new_face[-1] != x:
                        new_face.append(x)
            else:
                new_face.append(index[v])
        if len(new_face) > 1 and new_face[0] == new_face[-1]:
            new_face.pop()
        faces.append(tuple(new_face))
        kinds.append(polyhedron.face_kinds[face_index])
    for v in n3:
        faces.append(_chain_cap(triangles[v]))
        kinds.append("triangle")

    edges = {edge_key(x, y) for face in faces for x, y in cyclic_pairs(face)}
    labels = {e: RIGHT_ANGLE for e in edges}
    origin = [polyhedron.vertex_origin[v] for v in kept] + [None] * len(midpoint)
    truncated = build_polyhedron(
        len(kept) + len(midpoint),
        faces,
        labels,
        name=f"{polyhedron.name} (full truncation)" if polyhedron.name else "",
        face_kinds=kinds,
        vertex_origin=origin,
    )
    logger.debug("full truncation counts %s", counts)
    return FullTruncation(polyhedron=truncated, counts=counts)


def uniformize_labeling(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> Tuple[LabeledPolyhedron, RealizabilityReport]:
    """Relabel π/2 edges as π/2 and every other Coxeter label as π/3.

    Raises:
        HypothesisViolated: Fewer than 6 faces.
        HasPrismatic3Circuit: Some prismatic 3-circuit exists.
        NotCoxeter: Some label is not π/n with n ≥ 2.
    """
    if polyhedron.face_count < 6:
        raise HypothesisViolated(
            f"uniformization needs at least 6 faces, got {polyhedron.face_count}"
        )
    circuits = enumerate_prismatic_circuits(polyhedron, 3, tolerance=tolerance)
    if circuits:
        raise HasPrismatic3Circuit(
            f"prismatic 3-circuit crossing {list(circuits[0].crossed_edges)}"
        )
    labels = {}
    for e, angle in polyhedron.labels.items():
        order = angle.coxeter_order()
        if order is None or order < 2:
            raise NotCoxeter(f"label {angle} on edge {list(e)} is not π/n with n ≥ 2")
        labels[e] = RIGHT_ANGLE if order == 2 else THIRD_PI
    uniform = polyhedron.with_labels(labels)
    return uniform, check_andreev(uniform, tolerance)


QuadrilateralKind = Literal["cylindrical", "acylindrical"]


def classify_quadrilateral(
    polyhedron: LabeledPolyhedron,
    quadrilateral: Circuit,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Tuple[QuadrilateralKind, Optional[Circuit]]:
    """Cylindrical when, after splitting, a prismatic 4-circuit runs through the new face.

    The witness must cross two edges of the new face and two edges labeled
    exactly π/2.
    """
    result = split_along(polyhedron, quadrilateral, tolerance=tolerance)
    for part in result.parts:
        cap = part.cap_face
        for circuit in enumerate_prismatic_circuits(part.polyhedron, 4, tolerance=tolerance):
            if cap not in circuit.faces:
                continue
            others = [e for e in circuit.crossed_edges if e not in part.introduced_edges]
            if len(others) == 2 and all(
                part.polyhedron.labels[e].compare(RIGHT_ANGLE, tolerance) == 0 for e in others
            ):
                return "cylindrical", circuit
    return "acylindrical", None
