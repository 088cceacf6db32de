"""Cut-and-paste constructions for test inputs.

``glue_along_triangles`` is the inverse of splitting along a prismatic
3-circuit: the two triangles are removed, the faces around them are merged
pairwise, and each triangle corner is smoothed away so that the two edges
meeting there become one.
"""

import logging
from typing import Dict, List, Optional, Tuple

from polyhedral_volume.core.angles import DEFAULT_TOLERANCE, Angle
from polyhedral_volume.core.errors import InputError
from polyhedral_volume.core.polyhedron import (
    Edge,
    FaceKind,
    LabeledPolyhedron,
    build_polyhedron,
    edge_key,
)
from polyhedral_volume.core.rewrite import truncate_vertices

logger = logging.getLogger(__name__)


def truncate_vertex(
    polyhedron: LabeledPolyhedron, v: int, kind: Optional[FaceKind] = None
) -> Tuple[LabeledPolyhedron, int]:
    """Cut off ``v``; returns the new polyhedron and the index of the new face."""
    if not 0 <= v < polyhedron.vertex_count:
        raise InputError(f"vertex {v} outside 0..{polyhedron.vertex_count - 1}")
    kinds = {v: kind} if kind is not None else None
    truncated = truncate_vertices(polyhedron, [v], kinds=kinds)
    return truncated, truncated.face_count - 1


def _outer_neighbor(
    polyhedron: LabeledPolyhedron, corners: Tuple[int, ...], x: int
) -> int:
    others = [w for w in polyhedron.graph.neighbors(x) if w not in corners]
    if len(others) != 1:
        raise InputError(f"triangle corner {x} must have degree 3")
    return others[0]


def _path_between(face: Tuple[int, ...], first: int, second: int) -> List[int]:
    """Vertices of ``face`` strictly after ``second`` and before ``first``, going forward."""
    n = len(face)
    start = (face.index(second) + 1) % n
    path = []
    i = start
    while face[i] != first:
        path.append(face[i])
        i = (i + 1) % n
    return path


def _triangle(polyhedron: LabeledPolyhedron, face: int) -> Tuple[int, ...]:
    if not 0 <= face < polyhedron.face_count:
        raise InputError(f"face {face} outside 0..{polyhedron.face_count - 1}")
    corners = polyhedron.faces[face]
    if len(corners) != 3:
        raise InputError(f"face {face} of {polyhedron.name or 'polyhedron'} is not a triangle")
    return corners


def glue_along_triangles(
    first: LabeledPolyhedron,
    first_face: int,
    second: LabeledPolyhedron,
    second_face: int,
    *,
    name: str = "",
    tolerance: float = DEFAULT_TOLERANCE,
) -> LabeledPolyhedron:
    """Glue two polyhedra along triangular faces.

    Corner ``x`` of the first triangle is matched with a corner ``y`` of the
    second so that orientations agree and the edge leaving ``x`` carries the
    same label as the edge leaving ``y``; the two become a single edge.

    Raises:
        InputError: A face is not a triangle, a corner has degree other than
            3, or no matching of corners carries equal labels.
    """
    xs = _triangle(first, first_face)
    ys = _triangle(second, second_face)
    outer_x = [_outer_neighbor(first, xs, x) for x in xs]
    outer_y = [_outer_neighbor(second, ys, y) for y in ys]

    def label_out(polyhedron: LabeledPolyhedron, corner: int, outer: int) -> Angle:
        return polyhedron.labels[edge_key(corner, outer)]

    match: Optional[List[int]] = None
    for k in range(3):
        candidate = [(k - i) % 3 for i in range(3)]
        if all(
            label_out(first, xs[i], outer_x[i]).compare(
                label_out(second, ys[j], outer_y[j]), tolerance
            )
            == 0
            for i, j in enumerate(candidate)
        ):
            match = candidate
            break
    if match is None:
        raise InputError("no orientation-reversing matching of the triangles has equal labels")

    kept_first = [v for v in range(first.vertex_count) if v not in xs]
    kept_second = [v for v in range(second.vertex_count) if v not in ys]
    index_first = {v: i for i, v in enumerate(kept_first)}
    offset = len(kept_first)
    index_second = {v: offset + i for i, v in enumerate(kept_second)}

    faces: List[Tuple[int, ...]] = []
    kinds: List[FaceKind] = []
    first_darts = first.dart_faces
    second_darts = second.dart_faces
    merged_first = set()
    merged_second = set()
    for i in range(3):
        x_here, x_next = xs[i], xs[(i + 1) % 3]
        y_here, y_next = ys[match[i]], ys[match[(i + 1) % 3]]
        f = first_darts[(x_next, x_here)]
        g = second_darts[(y_here, y_next)]
        merged_first.add(f)
        merged_second.add(g)
        side_first = _path_between(first.faces[f], x_next, x_here)
        side_second = _path_between(second.faces[g], y_here, y_next)
        faces.append(
            tuple(index_first[v] for v in side_first)
            + tuple(index_second[v] for v in side_second)
        )
        kinds.append(first.face_kinds[f])
    for f, face in enumerate(first.faces):
        if f != first_face and f not in merged_first:
            faces.append(tuple(index_first[v] for v in face))
            kinds.append(first.face_kinds[f])
    for g, face in enumerate(second.faces):
        if g != second_face and g not in merged_second:
            faces.append(tuple(index_second[v] for v in face))
            kinds.append(second.face_kinds[g])

    labels: Dict[Edge, Angle] = {}
    for (u, v), angle in first.labels.items():
        if u not in xs and v not in xs:
            labels[edge_key(index_first[u], index_first[v])] = angle
    for (u, v), angle in second.labels.items():
        if u not in ys and v not in ys:
            labels[edge_key(index_second[u], index_second[v])] = angle
    for i in range(3):
        j = match[i]
        through = edge_key(index_first[outer_x[i]], index_second[outer_y[j]])
        labels[through] = label_out(first, xs[i], outer_x[i])

    glued = build_polyhedron(
        len(kept_first) + len(kept_second),
        faces,
        labels,
        name=name or f"{first.name or 'P'}#{second.name or 'Q'}",
        non_obtuse=False,
        face_kinds=kinds,
    )
    logger.debug(
        "glued %d + %d vertices into %d (faces %d)",
        first.vertex_count,
        second.vertex_count,
        glued.vertex_count,
        glued.face_count,
    )
    return glued
