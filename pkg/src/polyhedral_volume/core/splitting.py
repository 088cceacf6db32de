"""Cutting a labeled polyhedron along a prismatic circuit.

Splitting happens in the primal: each crossed edge is cut at a midpoint,
the two sides keep their own faces, the faces of the circuit are
truncated, and each side is closed off by a new cap face (a triangle for a
3-circuit, a quadrilateral for a 4-circuit). The cap edges are the
introduced edges and carry the label π/2; each half of a crossed edge keeps
that edge's label. In the dual this is exactly coning each side off over a
new apex.
"""

import logging
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from polyhedral_volume.core.angles import DEFAULT_TOLERANCE, RIGHT_ANGLE, Angle
from polyhedral_volume.core.circuits import Circuit, circuit_from_edges
from polyhedral_volume.core.errors import NotPrismatic
from polyhedral_volume.core.polyhedron import (
    Edge,
    FaceKind,
    LabeledPolyhedron,
    build_polyhedron,
    cyclic_pairs,
    edge_key,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SplitPart:
    """One side of a split, with maps from the parent polyhedron into it."""

    polyhedron: LabeledPolyhedron
    side: FrozenSet[int]
    vertex_map: Dict[int, int] = field(repr=False)
    edge_map: Dict[Edge, Edge] = field(repr=False)
    face_map: Dict[int, int] = field(repr=False)
    cap_face: int
    introduced_edges: FrozenSet[Edge] = field(repr=False)

    def transport(self, crossed: Sequence[Edge]) -> Optional[Tuple[Edge, ...]]:
        """Image of a set of parent edges, or None when one of them is not in this part."""
        image = []
        for e in crossed:
            mapped = self.edge_map.get(edge_key(*e))
            if mapped is None:
                return None
            image.append(mapped)
        return tuple(image)


@dataclass(frozen=True)
class SplitResult:
    circuit: Circuit
    interior: SplitPart
    exterior: SplitPart

    @property
    def interior_part(self) -> LabeledPolyhedron:
        return self.interior.polyhedron

    @property
    def exterior_part(self) -> LabeledPolyhedron:
        return self.exterior.polyhedron

    @property
    def parts(self) -> Tuple[SplitPart, SplitPart]:
        return self.interior, self.exterior

    @property
    def introduced_edges(self) -> Tuple[FrozenSet[Edge], FrozenSet[Edge]]:
        return self.interior.introduced_edges, self.exterior.introduced_edges


def _cap_kind(k: int) -> FaceKind:
    return "triangle" if k == 3 else "quadrilateral"


def _build_side(
    polyhedron: LabeledPolyhedron,
    circuit: Circuit,
    side: FrozenSet[int],
    name: str,
) -> SplitPart:
    crossed = {e: i for i, e in enumerate(circuit.crossed_edges)}
    ordered = sorted(side)
    vertex_map = {v: i for i, v in enumerate(ordered)}
    midpoint = {e: len(ordered) + i for e, i in crossed.items()}
    vertex_count = len(ordered) + len(crossed)

    faces: List[Tuple[int, ...]] = []
    kinds: List[FaceKind] = []
    face_map: Dict[int, int] = {}
    cap_darts: Dict[int, int] = {}
    for index, face in enumerate(polyhedron.faces):
        members = polyhedron.face_vertex_sets[index]
        if members <= side:
            face_map[index] = len(faces)
            faces.append(tuple(vertex_map[v] for v in face))
            kinds.append(polyhedron.face_kinds[index])
            continue
        if not members & side:
            continue
        new_face: List[int] = []
        for a, b in cyclic_pairs(face):
            if a in side:
                new_face.append(vertex_map[a])
            e = edge_key(a, b)
            if e in crossed:
                new_face.append(midpoint[e])
        # the truncated face runs mid -> mid across the cut; the cap runs it backwards
        for x, y in cyclic_pairs(new_face):
            if x >= len(ordered) and y >= len(ordered):
                cap_darts[y] = x
        face_map[index] = len(faces)
        faces.append(tuple(new_face))
        kinds.append(polyhedron.face_kinds[index])

    start = min(cap_darts)
    cap = [start]
    while len(cap) < len(cap_darts):
        cap.append(cap_darts[cap[-1]])
    cap_face = len(faces)
    faces.append(tuple(cap))
    kinds.append(_cap_kind(circuit.length))

    labels: Dict[Edge, Angle] = {}
    edge_map: Dict[Edge, Edge] = {}
    for e, angle in polyhedron.labels.items():
        u, v = e
        if u in side and v in side:
            new = edge_key(vertex_map[u], vertex_map[v])
        elif e in crossed:
            inner = u if u in side else v
            new = edge_key(vertex_map[inner], midpoint[e])
        else:
            continue
        labels[new] = angle
        edge_map[e] = new
    introduced = frozenset(edge_key(x, y) for x, y in cyclic_pairs(cap))
    for e in introduced:
        labels[e] = RIGHT_ANGLE

    origin = [polyhedron.vertex_origin[v] for v in ordered] + [None] * len(crossed)
    part = build_polyhedron(
        vertex_count,
        faces,
        labels,
        name=name,
        non_obtuse=False,
        face_kinds=kinds,
        vertex_origin=origin,
    )
    return SplitPart(
        polyhedron=part,
        side=side,
        vertex_map=vertex_map,
        edge_map=edge_map,
        face_map=face_map,
        cap_face=cap_face,
        introduced_edges=introduced,
    )


def split_along(
    polyhedron: LabeledPolyhedron,
    circuit: Circuit,
    *,
    tolerance: float = DEFAULT_TOLERANCE,
) -> SplitResult:
    """Split ``polyhedron`` along a prismatic 3- or 4-circuit.

    The interior part is the side with fewer faces strictly inside it
    (ties go to the side holding the smallest vertex index).

    Raises:
        NotPrismatic: The circuit is not a prismatic circuit of ``polyhedron``.
    """
    # re-derive from the edges so a circuit from another polyhedron is rejected
    checked = circuit_from_edges(polyhedron, circuit.crossed_edges, tolerance=tolerance)
    if checked.faces != circuit.faces:
        raise NotPrismatic(
            f"circuit through faces {list(circuit.faces)} does not match the polyhedron"
        )
    first, second = checked.sides
    inside_first, inside_second = checked.inside_faces
    if (len(inside_second), min(second)) < (len(inside_first), min(first)):
        first, second = second, first

    base = polyhedron.name or "P"
    interior = _build_side(polyhedron, checked, first, f"{base}.1")
    exterior = _build_side(polyhedron, checked, second, f"{base}.2")
    logger.debug(
        "split %s along %s into %d + %d faces",
        base,
        list(checked.crossed_edges),
        interior.polyhedron.face_count,
        exterior.polyhedron.face_count,
    )
    return SplitResult(circuit=checked, interior=interior, exterior=exterior)


def split_sequence(
    polyhedron: LabeledPolyhedron,
    circuits: Sequence[Circuit],
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> List[LabeledPolyhedron]:
    """Split along several circuits in turn, carrying the later ones through each split.

    A circuit that no longer is prismatic once carried into its part is
    skipped with a warning; one that became trivial is skipped silently.
    """
    pieces: List[LabeledPolyhedron] = [polyhedron]
    pending: List[Tuple[int, Tuple[Edge, ...]]] = [(0, c.crossed_edges) for c in circuits]
    while pending:
        index, crossed = pending.pop(0)
        piece = pieces[index]
        try:
            circuit = circuit_from_edges(
                piece, crossed, right_angled=right_angled, tolerance=tolerance
            )
        except NotPrismatic as e:
            logger.warning("skipping circuit %s: %s", list(crossed), e)
            continue
        if circuit.trivial:
            logger.debug("circuit %s became trivial in its part; not splitting", list(crossed))
            continue
        result = split_along(piece, circuit, tolerance=tolerance)
        pieces[index] = result.interior_part
        pieces.append(result.exterior_part)
        exterior_index = len(pieces) - 1

        carried = []
        for other_index, other in pending:
            if other_index != index:
                carried.append((other_index, other))
                continue
            inner = result.interior.transport(other)
            outer = result.exterior.transport(other)
            if inner is not None and outer is None:
                carried.append((index, inner))
            elif outer is not None and inner is None:
                carried.append((exterior_index, outer))
            else:
                logger.warning(
                    "circuit %s does not lie on one side of %s", list(other), list(crossed)
                )
        pending = carried
    return pieces
