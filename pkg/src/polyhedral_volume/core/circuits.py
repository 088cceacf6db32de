"""Prismatic circuits: closed curves in the dual graph crossing pairwise disjoint edges."""

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import FrozenSet, Iterable, List, Sequence, Tuple

import networkx as nx

from polyhedral_volume.core.angles import (
    DEFAULT_TOLERANCE,
    Angle,
    Geometry,
    angle_sum,
    classify_sum,
)
from polyhedral_volume.core.errors import NotPrismatic
from polyhedral_volume.core.polyhedron import Edge, LabeledPolyhedron, dual_graph, edge_key


@dataclass(frozen=True)
class Circuit:
    """A prismatic k-circuit.

    ``faces`` is the dual cycle, rotated to start at its smallest face;
    ``crossed_edges[i]`` is the primal edge between ``faces[i]`` and
    ``faces[i + 1]``. ``sides`` partitions the primal vertices by the curve
    and ``inside_faces`` lists, per side, the faces lying wholly on it.
    """

    faces: Tuple[int, ...]
    crossed_edges: Tuple[Edge, ...]
    geometry: Geometry
    trivial: bool
    label_sum: Angle = field(compare=False)
    in_band: bool = field(default=False, compare=False)
    sides: Tuple[FrozenSet[int], FrozenSet[int]] = field(
        default=(frozenset(), frozenset()), compare=False, repr=False
    )
    inside_faces: Tuple[FrozenSet[int], FrozenSet[int]] = field(
        default=(frozenset(), frozenset()), compare=False, repr=False
    )

    @property
    def length(self) -> int:
        return len(self.faces)

    @property
    def dual_edges(self) -> Tuple[Tuple[int, int], ...]:
        k = len(self.faces)
        return tuple((self.faces[i], self.faces[(i + 1) % k]) for i in range(k))

    @property
    def crossed_primal_edges(self) -> FrozenSet[Edge]:
        return frozenset(self.crossed_edges)

    @property
    def key(self) -> Tuple[Edge, ...]:
        """Canonical sort key: the sorted crossed edges."""
        return tuple(sorted(self.crossed_edges))

    def side_of_face(self, face: int) -> int:
        """0 or 1 for faces strictly on a side, -1 for the circuit's own faces."""
        if face in self.inside_faces[0]:
            return 0
        if face in self.inside_faces[1]:
            return 1
        return -1


def _pairwise_disjoint(edges: Sequence[Edge]) -> bool:
    return all(not set(e) & set(f) for e, f in itertools.combinations(edges, 2))


def circuit_sides(
    polyhedron: LabeledPolyhedron, crossed: Iterable[Edge]
) -> Tuple[FrozenSet[int], FrozenSet[int]]:
    """Split the primal vertices by removing the crossed edges.

    Raises:
        NotPrismatic: If the remaining graph does not have exactly two components.
    """
    g = polyhedron.graph.copy()
    g.remove_edges_from(crossed)
    components = sorted((frozenset(c) for c in nx.connected_components(g)), key=min)
    if len(components) != 2:
        raise NotPrismatic(
            f"removing the crossed edges leaves {len(components)} components, expected 2"
        )
    return components[0], components[1]


def _canonical_cycle(faces: Sequence[int]) -> Tuple[int, ...]:
    k = len(faces)
    start = faces.index(min(faces))
    forward = tuple(faces[(start + i) % k] for i in range(k))
    backward = tuple(faces[(start - i) % k] for i in range(k))
    return min(forward, backward)


def circuit_from_edges(
    polyhedron: LabeledPolyhedron,
    crossed: Iterable[Edge],
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Circuit:
    """Build the circuit crossing exactly the given primal edges.

    Args:
        right_angled: Classify as though every label were π/2.

    Raises:
        NotPrismatic: The edges do not form a prismatic circuit of length 3 or 4.
    """
    edges = sorted({edge_key(*e) for e in crossed})
    k = len(edges)
    if k not in (3, 4):
        raise NotPrismatic(f"a circuit crosses 3 or 4 edges, got {k}")
    missing = [e for e in edges if e not in polyhedron.labels]
    if missing:
        raise NotPrismatic(f"edges {missing} are not edges of the polyhedron")
    if not _pairwise_disjoint(edges):
        raise NotPrismatic(f"crossed edges {edges} share a vertex")

    ring = nx.Graph()
    for e in edges:
        f, g = polyhedron.edge_faces[e]
        ring.add_edge(f, g, primal=e)
    if (
        ring.number_of_nodes() != k
        or any(d != 2 for _, d in ring.degree)
        or not nx.is_connected(ring)
    ):
        raise NotPrismatic(f"crossed edges {edges} do not close up into a {k}-cycle of faces")

    cycle = _canonical_cycle([f for f, _ in nx.find_cycle(ring)])
    ordered = tuple(ring.edges[cycle[i], cycle[(i + 1) % k]]["primal"] for i in range(k))

    if right_angled:
        total = Angle.from_pi_fraction(Fraction(k, 2))
    else:
        total = angle_sum(polyhedron.labels[e] for e in ordered)
    geometry, in_band = classify_sum(total, 1 if k == 3 else 2, tolerance)

    sides = circuit_sides(polyhedron, ordered)
    inside = tuple(
        frozenset(i for i, vs in enumerate(polyhedron.face_vertex_sets) if vs <= side)
        for side in sides
    )
    return Circuit(
        faces=cycle,
        crossed_edges=ordered,
        geometry=geometry,
        trivial=len(inside[0]) == 1 or len(inside[1]) == 1,
        label_sum=total,
        in_band=in_band,
        sides=sides,
        inside_faces=inside,
    )


def enumerate_prismatic_circuits(
    polyhedron: LabeledPolyhedron,
    k: int,
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> List[Circuit]:
    """All prismatic k-circuits, sorted by their crossed edges.

    Exhaustive search over the simple k-cycles of the dual graph.
    """
    if k not in (3, 4):
        raise ValueError(f"k must be 3 or 4, got {k}")
    dual = dual_graph(polyhedron).graph
    found = {}
    for cycle in nx.simple_cycles(dual, length_bound=k):
        if len(cycle) != k:
            continue
        crossed = [dual.edges[cycle[i], cycle[(i + 1) % k]]["primal"] for i in range(k)]
        if not _pairwise_disjoint(crossed):
            continue
        circuit = circuit_from_edges(
            polyhedron, crossed, right_angled=right_angled, tolerance=tolerance
        )
        found[circuit.key] = circuit
    return [found[key] for key in sorted(found)]


def euclidean_4_circuits(
    polyhedron: LabeledPolyhedron,
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> List[Circuit]:
    return [
        c
        for c in enumerate_prismatic_circuits(
            polyhedron, 4, right_angled=right_angled, tolerance=tolerance
        )
        if c.geometry == "euclidean"
    ]
