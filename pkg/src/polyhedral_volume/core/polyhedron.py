"""Labeled abstract polyhedra: validation, duals, vertex links and prism recognition.

A polyhedron is given by its faces as cyclic vertex sequences. The face
list fixes the planar embedding: every edge must be traversed once in each
direction by the two faces that contain it.
"""

import logging
from dataclasses import dataclass, field, replace
from functools import cached_property
from typing import Dict, Iterable, List, Literal, Mapping, Optional, Sequence, Tuple

import networkx as nx

from polyhedral_volume.core.angles import (
    DEFAULT_TOLERANCE,
    RIGHT_ANGLE,
    Angle,
    Geometry,
    angle_sum,
    classify_sum,
)
from polyhedral_volume.core.errors import (
    BadDegree,
    LabelOutOfRange,
    MissingLabel,
    Not3Connected,
    NotPlanarComplex,
)

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]
FaceKind = Literal["original", "triangle", "quadrilateral", "ideal"]

STRAIGHT_ANGLE = Angle.pi_over(1)


def edge_key(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


def cyclic_pairs(face: Sequence[int]) -> Iterable[Tuple[int, int]]:
    """Consecutive (u, v) pairs of a cyclic sequence, wrapping around."""
    n = len(face)
    for i in range(n):
        yield face[i], face[(i + 1) % n]


@dataclass(frozen=True)
class LabeledPolyhedron:
    """A validated abstract polyhedron with one dihedral-angle label per edge.

    ``face_kinds`` records which faces were introduced by splitting or
    truncation. ``vertex_origin`` maps each vertex to its index in the
    polyhedron the user supplied, or None for introduced vertices.
    """

    vertex_count: int
    faces: Tuple[Tuple[int, ...], ...]
    labels: Mapping[Edge, Angle] = field(repr=False)
    face_kinds: Tuple[FaceKind, ...] = field(repr=False)
    vertex_origin: Tuple[Optional[int], ...] = field(repr=False)
    name: str = ""

    @property
    def face_count(self) -> int:
        return len(self.faces)

    @cached_property
    def edges(self) -> Tuple[Edge, ...]:
        return tuple(sorted({edge_key(u, v) for f in self.faces for u, v in cyclic_pairs(f)}))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    @cached_property
    def dart_faces(self) -> Dict[Tuple[int, int], int]:
        """Directed edge (u, v) -> index of the face traversing it in that direction."""
        return {
            (u, v): index
            for index, face in enumerate(self.faces)
            for u, v in cyclic_pairs(face)
        }

    @cached_property
    def edge_faces(self) -> Dict[Edge, Tuple[int, int]]:
        darts = self.dart_faces
        return {(u, v): (darts[(u, v)], darts[(v, u)]) for u, v in self.edges}

    @cached_property
    def face_vertex_sets(self) -> Tuple[frozenset, ...]:
        return tuple(frozenset(face) for face in self.faces)

    @cached_property
    def graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.vertex_count))
        for u, v in self.edges:
            g.add_edge(u, v, label=self.labels[(u, v)])
        return g

    def degree(self, v: int) -> int:
        return self.graph.degree[v]

    def label(self, u: int, v: int) -> Angle:
        return self.labels[edge_key(u, v)]

    def face_edges(self, index: int) -> List[Edge]:
        return [edge_key(u, v) for u, v in cyclic_pairs(self.faces[index])]

    def vertex_edges(self, v: int) -> List[Edge]:
        return [edge_key(v, w) for w in self.graph.neighbors(v)]

    def vertex_rotation(self, v: int) -> Tuple[int, ...]:
        """Faces around ``v`` in cyclic order."""
        darts = self.dart_faces
        start = next(w for w in self.graph.neighbors(v))
        rotation = []
        w = start
        while True:
            face_index = darts[(w, v)]
            rotation.append(face_index)
            face = self.faces[face_index]
            w = face[(face.index(v) + 1) % len(face)]
            if w == start:
                break
        return tuple(rotation)

    @property
    def is_trivalent(self) -> bool:
        return all(d == 3 for _, d in self.graph.degree)

    @property
    def is_simplex(self) -> bool:
        return self.vertex_count == 4

    def is_coxeter(self) -> bool:
        """True when every label is exactly π/n with n ≥ 2."""
        return all(
            (order := angle.coxeter_order()) is not None and order >= 2
            for angle in self.labels.values()
        )

    def original_vertices(self) -> List[int]:
        return [v for v, origin in enumerate(self.vertex_origin) if origin is not None]

    def with_labels(self, labels: Mapping[Edge, Angle]) -> "LabeledPolyhedron":
        missing = set(self.edges) - set(labels)
        if missing:
            raise MissingLabel(f"no label for edges {sorted(missing)}")
        return replace(self, labels=dict(labels))

    def with_name(self, name: str) -> "LabeledPolyhedron":
        return replace(self, name=name)


def build_polyhedron(
    vertex_count: int,
    faces: Sequence[Sequence[int]],
    labels: Mapping[Tuple[int, int], Angle],
    *,
    name: str = "",
    allow_degree4: bool = True,
    non_obtuse: bool = True,
    face_kinds: Optional[Sequence[FaceKind]] = None,
    vertex_origin: Optional[Sequence[Optional[int]]] = None,
) -> LabeledPolyhedron:
    """Validate faces and labels and return a LabeledPolyhedron.

    Args:
        vertex_count: Number of vertices, indexed from 0.
        faces: Cyclic vertex sequences, consistently oriented.
        labels: Dihedral angle per unordered edge.
        allow_degree4: Accept degree-4 vertices (disable for Coxeter orbifold inputs).
        non_obtuse: Require labels in (0, π/2]; otherwise (0, π).

    Raises:
        NotPlanarComplex: Malformed faces, an edge not in exactly two faces, or Euler fails.
        Not3Connected: The 1-skeleton has a vertex cut of size below 3.
        BadDegree: A vertex degree outside {3, 4}.
        MissingLabel: An edge without a label, or a label on a non-edge.
        LabelOutOfRange: A label outside the permitted interval.
    """
    if vertex_count < 4:
        raise NotPlanarComplex(f"faces must cover at least 4 vertices, got {vertex_count}")

    normalized: List[Tuple[int, ...]] = []
    for i, face in enumerate(faces):
        face = tuple(int(v) for v in face)
        if len(face) < 3:
            raise NotPlanarComplex(f"face {i} has fewer than 3 vertices", witness=face)
        if len(set(face)) != len(face):
            raise NotPlanarComplex(f"face {i} repeats a vertex", witness=face)
        for v in face:
            if not 0 <= v < vertex_count:
                raise NotPlanarComplex(
                    f"face {i} uses vertex {v} outside 0..{vertex_count - 1}", witness=face
                )
        normalized.append(face)

    darts: Dict[Tuple[int, int], int] = {}
    for i, face in enumerate(normalized):
        for u, v in cyclic_pairs(face):
            if (u, v) in darts:
                raise NotPlanarComplex(
                    f"edge ({u}, {v}) is traversed in the same direction by faces "
                    f"{darts[(u, v)]} and {i}; faces must be listed once and oriented consistently",
                    witness=(u, v),
                )
            darts[(u, v)] = i
    for u, v in darts:
        if (v, u) not in darts:
            raise NotPlanarComplex(
                f"edge {{{u}, {v}}} lies in only one face "
                "(or in two faces with clashing orientation)",
                witness=edge_key(u, v),
            )

    covered = {v for face in normalized for v in face}
    if len(covered) != vertex_count:
        missing = sorted(set(range(vertex_count)) - covered)
        raise NotPlanarComplex(f"vertices {missing} lie on no face", witness=missing)

    edges = sorted({edge_key(u, v) for u, v in darts})
    euler = vertex_count - len(edges) + len(normalized)
    if euler != 2:
        raise NotPlanarComplex(
            f"Euler characteristic V - E + F = {vertex_count} - {len(edges)} + "
            f"{len(normalized)} = {euler}, expected 2"
        )

    skeleton = nx.Graph()
    skeleton.add_nodes_from(range(vertex_count))
    skeleton.add_edges_from(edges)
    if nx.node_connectivity(skeleton) < 3:
        cut = sorted(nx.minimum_node_cut(skeleton))
        raise Not3Connected(f"1-skeleton is not 3-connected (vertex cut {cut})", witness=cut)

    allowed = {3, 4} if allow_degree4 else {3}
    for v, d in skeleton.degree:
        if d not in allowed:
            wanted = "3 or 4" if allow_degree4 else "3 (trivalent input required)"
            raise BadDegree(f"vertex {v} has degree {d}, expected {wanted}", witness=v)

    label_map: Dict[Edge, Angle] = {}
    for (u, v), angle in labels.items():
        key = edge_key(u, v)
        if key in label_map:
            raise MissingLabel(f"edge {list(key)} labeled twice", witness=key)
        label_map[key] = angle
    missing = [e for e in edges if e not in label_map]
    if missing:
        raise MissingLabel(f"no label for edges {[list(e) for e in missing]}", witness=missing)
    extra = sorted(set(label_map) - set(edges))
    if extra:
        raise MissingLabel(f"labels given for non-edges {[list(e) for e in extra]}", witness=extra)

    upper = RIGHT_ANGLE if non_obtuse else STRAIGHT_ANGLE
    for e in edges:
        angle = label_map[e]
        position = angle.compare(upper, tolerance=DEFAULT_TOLERANCE)
        too_big = position > 0 if non_obtuse else position >= 0
        if angle.radians <= 0 or too_big:
            interval = "(0, π/2]" if non_obtuse else "(0, π)"
            raise LabelOutOfRange(f"label {angle} on edge {list(e)} outside {interval}", witness=e)

    kinds = tuple(face_kinds) if face_kinds is not None else ("original",) * len(normalized)
    if len(kinds) != len(normalized):
        raise ValueError("face_kinds must match the number of faces")
    origin = tuple(vertex_origin) if vertex_origin is not None else tuple(range(vertex_count))

    if vertex_count == 4:
        logger.info("%s has 4 vertices; realizability checks need more", name or "polyhedron")

    return LabeledPolyhedron(
        vertex_count=vertex_count,
        faces=tuple(normalized),
        labels={e: label_map[e] for e in edges},
        face_kinds=kinds,
        vertex_origin=origin,
        name=name,
    )


@dataclass(frozen=True)
class DualGraph:
    """Dual of a polyhedron: one node per face, one edge per primal edge.

    Dual edges carry the primal label under ``label`` and the primal edge
    under ``primal``.
    """

    polyhedron: LabeledPolyhedron
    graph: nx.Graph = field(repr=False)

    @property
    def dual_vertices(self) -> range:
        return range(self.polyhedron.face_count)

    @property
    def dual_edges(self) -> List[Tuple[int, int]]:
        return sorted(edge_key(f, g) for f, g in self.graph.edges)

    @property
    def face_of_dual_vertex(self) -> Dict[int, Tuple[int, ...]]:
        return dict(enumerate(self.polyhedron.faces))

    def primal_edge(self, f: int, g: int) -> Edge:
        return self.graph.edges[f, g]["primal"]

    def label(self, f: int, g: int) -> Angle:
        return self.graph.edges[f, g]["label"]

    def dual_faces(self) -> List[Tuple[int, ...]]:
        """Faces of the dual, one per primal vertex, as rotations of primal faces."""
        return [self.polyhedron.vertex_rotation(v) for v in range(self.polyhedron.vertex_count)]


def dual_graph(polyhedron: LabeledPolyhedron) -> DualGraph:
    g = nx.Graph()
    g.add_nodes_from(range(polyhedron.face_count))
    for e, (f, h) in polyhedron.edge_faces.items():
        g.add_edge(f, h, label=polyhedron.labels[e], primal=e)
    return DualGraph(polyhedron=polyhedron, graph=g)


def vertex_angle_sum(polyhedron: LabeledPolyhedron, v: int) -> Angle:
    return angle_sum(polyhedron.labels[e] for e in polyhedron.vertex_edges(v))


def vertex_link(
    polyhedron: LabeledPolyhedron, v: int, tolerance: float = DEFAULT_TOLERANCE
) -> Tuple[Geometry, bool]:
    """Link geometry of ``v`` and whether the decision fell in the tolerance band."""
    degree = polyhedron.degree(v)
    if degree not in (3, 4):
        raise BadDegree(f"vertex {v} has degree {degree}", witness=v)
    return classify_sum(vertex_angle_sum(polyhedron, v), degree - 2, tolerance)


def classify_vertex_link(
    polyhedron: LabeledPolyhedron, v: int, tolerance: float = DEFAULT_TOLERANCE
) -> Geometry:
    """Spherical (finite), Euclidean (ideal) or hyperbolic (hyperideal) link at ``v``."""
    return vertex_link(polyhedron, v, tolerance)[0]


def _keyed_graph(polyhedron: LabeledPolyhedron) -> nx.Graph:
    g = nx.Graph()
    g.add_nodes_from(range(polyhedron.vertex_count))
    for e, angle in polyhedron.labels.items():
        g.add_edge(*e, key=angle.key())
    return g


def canonical_key(polyhedron: LabeledPolyhedron) -> str:
    """Isomorphism-invariant hash of the labeled 1-skeleton."""
    return nx.weisfeiler_lehman_graph_hash(
        _keyed_graph(polyhedron), edge_attr="key", iterations=4
    )


def is_isomorphic(first: LabeledPolyhedron, second: LabeledPolyhedron) -> bool:
    """Label-preserving isomorphism of 1-skeletons."""
    if (first.vertex_count, first.edge_count) != (second.vertex_count, second.edge_count):
        return False
    return nx.is_isomorphic(
        _keyed_graph(first),
        _keyed_graph(second),
        edge_match=lambda a, b: a["key"] == b["key"],
    )


@dataclass(frozen=True)
class PrismStructure:
    """Combinatorial prism: two n-gon caps and n quadrilaterals.

    ``a_edges[i]`` and ``b_edges[i]`` are the edges lateral ``i`` shares
    with the top and bottom; ``c_edges[i]`` is shared by laterals ``i`` and
    ``i + 1``.
    """

    top: int
    bottom: int
    laterals: Tuple[int, ...]
    a_edges: Tuple[Edge, ...]
    b_edges: Tuple[Edge, ...]
    c_edges: Tuple[Edge, ...]

    @property
    def n(self) -> int:
        return len(self.laterals)


def _shared_edge(polyhedron: LabeledPolyhedron, f: int, g: int) -> Optional[Edge]:
    common = polyhedron.face_vertex_sets[f] & polyhedron.face_vertex_sets[g]
    if len(common) != 2:
        return None
    e = edge_key(*sorted(common))
    return e if e in polyhedron.labels else None


def prism_structures(polyhedron: LabeledPolyhedron) -> List[PrismStructure]:
    """Every way of reading the polyhedron as a prism (three for the cube)."""
    faces = polyhedron.faces
    n = polyhedron.vertex_count // 2
    if polyhedron.vertex_count != 2 * n or polyhedron.face_count != n + 2 or n < 3:
        return []
    if not polyhedron.is_trivalent:
        return []
    sets = polyhedron.face_vertex_sets
    found = []
    for top in range(len(faces)):
        for bottom in range(top + 1, len(faces)):
            if len(faces[top]) != n or len(faces[bottom]) != n:
                continue
            if sets[top] & sets[bottom]:
                continue
            others = [f for f in range(len(faces)) if f not in (top, bottom)]
            if any(len(faces[f]) != 4 for f in others):
                continue
            darts = polyhedron.dart_faces
            laterals = tuple(darts[(v, u)] for u, v in cyclic_pairs(faces[top]))
            if sorted(laterals) != others:
                continue
            a_edges = tuple(edge_key(u, v) for u, v in cyclic_pairs(faces[top]))
            b_edges = []
            c_edges = []
            for i, lateral in enumerate(laterals):
                b = _shared_edge(polyhedron, lateral, bottom)
                c = _shared_edge(polyhedron, lateral, laterals[(i + 1) % n])
                if b is None or c is None:
                    break
                b_edges.append(b)
                c_edges.append(c)
            else:
                found.append(
                    PrismStructure(
                        top=top,
                        bottom=bottom,
                        laterals=laterals,
                        a_edges=a_edges,
                        b_edges=tuple(b_edges),
                        c_edges=tuple(c_edges),
                    )
                )
    return found


def prism_structure(polyhedron: LabeledPolyhedron) -> Optional[PrismStructure]:
    structures = prism_structures(polyhedron)
    return structures[0] if structures else None
