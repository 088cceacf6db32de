"""Decomposition of polyhedral Coxeter orbifolds along Euclidean 4-circuits.

Components are recorded as Seifert-fibered when one neighborhood of a
Euclidean prismatic 4-circuit covers every face; the remaining components,
in which every Euclidean prismatic 4-circuit is trivial, are atoroidal.
"""

import logging
import random
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Literal, Optional, Sequence, Set, Tuple

from pydantic import BaseModel, Field

from polyhedral_volume.core.angles import DEFAULT_TOLERANCE, compare_with_pi
from polyhedral_volume.core.circuits import (
    Circuit,
    enumerate_prismatic_circuits,
    euclidean_4_circuits,
)
from polyhedral_volume.core.errors import (
    DecompositionError,
    NotEuclidean4Circuit,
    PreconditionViolated,
)
from polyhedral_volume.core.polyhedron import (
    Edge,
    LabeledPolyhedron,
    canonical_key,
    prism_structures,
    vertex_angle_sum,
)
from polyhedral_volume.core.splitting import split_along, split_sequence

logger = logging.getLogger(__name__)

DEFAULT_STEP_BUDGET = 500


@dataclass(frozen=True)
class NeighborhoodData:
    """The 1- or 2-neighborhood of a Euclidean prismatic 4-circuit.

    ``members`` are the Euclidean prismatic 4-circuits through the two
    opposite faces of ``base`` selected by ``index``; ``support`` is the
    union of their faces and ``boundary`` the members cutting off a side
    that holds no further support.
    """

    base: Circuit
    index: Literal[1, 2]
    members: Tuple[Circuit, ...]
    support: frozenset
    boundary: Tuple[Circuit, ...]
    borderline: Tuple[Circuit, ...] = field(default=(), repr=False)

    def covers(self, polyhedron: LabeledPolyhedron) -> bool:
        return len(self.support) == polyhedron.face_count


def _vertex_triangles(polyhedron: LabeledPolyhedron, side: Iterable[int]) -> int:
    # dual triangles are the degree-3 primal vertices
    return sum(1 for v in side if polyhedron.degree(v) == 3)


def _boundary_clause(
    polyhedron: LabeledPolyhedron, delta: Circuit, support: frozenset
) -> Tuple[bool, bool]:
    """Whether ``delta`` bounds its neighborhood, and whether the triangle count was exactly 5."""
    delta_faces = set(delta.faces)
    adjacency = {f: set() for f in range(polyhedron.face_count)}
    for f, g in polyhedron.edge_faces.values():
        adjacency[f].add(g)
        adjacency[g].add(f)
    for s in (0, 1):
        inside = delta.inside_faces[s] & support
        if not inside:
            return True, False
        if len(inside) == 1:
            (only,) = inside
            if delta_faces <= adjacency[only]:
                triangles = _vertex_triangles(polyhedron, delta.sides[s])
                if triangles >= 5:
                    return True, triangles == 5
    return False, False


def neighborhoods(
    polyhedron: LabeledPolyhedron,
    gamma: Circuit,
    *,
    euclidean: Optional[Sequence[Circuit]] = None,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Tuple[NeighborhoodData, NeighborhoodData]:
    """The 1-neighborhood (through faces 0 and 2 of gamma) and 2-neighborhood (faces 1 and 3).

    Raises:
        NotEuclidean4Circuit: ``gamma`` is not a Euclidean prismatic 4-circuit.
    """
    if gamma.length != 4 or gamma.geometry != "euclidean":
        raise NotEuclidean4Circuit(
            f"circuit {list(gamma.crossed_edges)} is a {gamma.geometry} {gamma.length}-circuit"
        )
    if euclidean is None:
        euclidean = euclidean_4_circuits(polyhedron, right_angled=right_angled, tolerance=tolerance)

    result = []
    for index, (i, j) in ((1, (0, 2)), (2, (1, 3))):
        pair = {gamma.faces[i], gamma.faces[j]}
        members = tuple(c for c in euclidean if pair <= set(c.faces))
        if gamma.key not in {c.key for c in members}:
            members = (gamma,) + members
        support = frozenset(f for c in members for f in c.faces)
        boundary = []
        borderline = []
        for delta in members:
            bounds, edge_case = _boundary_clause(polyhedron, delta, support)
            if bounds:
                boundary.append(delta)
                if edge_case:
                    borderline.append(delta)
                    logger.warning(
                        "circuit %s bounds its neighborhood with exactly 5 dual triangles",
                        list(delta.crossed_edges),
                    )
        result.append(
            NeighborhoodData(
                base=gamma,
                index=index,
                members=members,
                support=support,
                boundary=tuple(boundary),
                borderline=tuple(borderline),
            )
        )
    return result[0], result[1]


def _one_sided(polyhedron_edges: Iterable[Edge], circuit: Circuit) -> bool:
    sides = set()
    for u, v in polyhedron_edges:
        if u in circuit.sides[0] and v in circuit.sides[0]:
            sides.add(0)
        elif u in circuit.sides[1] and v in circuit.sides[1]:
            sides.add(1)
        else:
            return False
    return len(sides) <= 1


def is_admissible(circuits: Sequence[Circuit]) -> bool:
    """Each circuit lies entirely on one side of every other."""
    for i, first in enumerate(circuits):
        for second in circuits[i + 1 :]:
            if first.key == second.key:
                continue
            own = set(first.crossed_edges)
            other = set(second.crossed_edges)
            if not _one_sided(other - own, first) or not _one_sided(own - other, second):
                return False
    return True


def maximal_admissible_subset(
    circuits: Sequence[Circuit], order: Optional[Sequence[int]] = None
) -> List[Circuit]:
    """Greedy maximal admissible subset, visiting circuits in ``order`` (default: by key)."""
    unique = {c.key: c for c in circuits}
    canonical = [unique[k] for k in sorted(unique)]
    if order is not None:
        canonical = [canonical[i] for i in order]
    chosen: List[Circuit] = []
    for candidate in canonical:
        if is_admissible(chosen + [candidate]):
            chosen.append(candidate)
    return chosen


def complexity_set(
    polyhedron: LabeledPolyhedron,
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
    include_trivial: bool = True,
) -> Set[Tuple[Edge, ...]]:
    """Keys of the circuits bounding some neighborhood of a Euclidean 4-circuit.

    With ``include_trivial=False`` only nontrivial circuits are kept; that
    count is the one the decomposition loop drives to zero.
    """
    euclidean = euclidean_4_circuits(polyhedron, right_angled=right_angled, tolerance=tolerance)
    found = set()
    for gamma in euclidean:
        for hood in neighborhoods(polyhedron, gamma, euclidean=euclidean):
            found.update(
                delta.key for delta in hood.boundary if include_trivial or not delta.trivial
            )
    return found


def prismatic_complexity(
    polyhedra,
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
    include_trivial: bool = True,
) -> int:
    """Size of the complexity set, summed over a polyhedron or a collection of them."""
    if isinstance(polyhedra, LabeledPolyhedron):
        polyhedra = [polyhedra]
    return sum(
        len(
            complexity_set(
                p,
                right_angled=right_angled,
                tolerance=tolerance,
                include_trivial=include_trivial,
            )
        )
        for p in polyhedra
    )


class TraceStep(BaseModel):
    """One step of a decomposition run."""

    step: int
    action: Literal["spherical-split", "split", "seifert-fibered", "atoroidal"]
    component: str
    circuits: List[List[List[int]]] = Field(default_factory=list)
    complexity_before: Optional[int] = None
    complexity_after: Optional[int] = None
    note: str = ""


@dataclass
class DecompositionResult:
    seifert_fibered: List[LabeledPolyhedron] = field(default_factory=list)
    atoroidal: List[LabeledPolyhedron] = field(default_factory=list)
    spherical_splits: List[Tuple[Edge, ...]] = field(default_factory=list)
    euclidean3_splits: List[Tuple[Edge, ...]] = field(default_factory=list)
    trace: List[TraceStep] = field(default_factory=list)

    @property
    def components(self) -> List[Tuple[str, LabeledPolyhedron]]:
        return [("seifert-fibered", p) for p in self.seifert_fibered] + [
            ("atoroidal", p) for p in self.atoroidal
        ]

    def atoroidal_signature(self) -> List[str]:
        """Sorted canonical keys of the atoroidal components."""
        return sorted(canonical_key(p) for p in self.atoroidal)

    def to_dict(self) -> Dict[str, Any]:
        from polyhedral_volume.core.config import PolyhedronDocument

        return {
            "components": [
                {
                    "classification": kind,
                    "name": p.name,
                    "polyhedron": PolyhedronDocument.from_polyhedron(p).model_dump(
                        exclude_none=True
                    ),
                }
                for kind, p in self.components
            ],
            "spherical_splits": [[list(e) for e in c] for c in self.spherical_splits],
            "euclidean3_splits": [[list(e) for e in c] for c in self.euclidean3_splits],
            "trace": [step.model_dump() for step in self.trace],
        }


def _edges(circuit: Circuit) -> List[List[int]]:
    return [list(e) for e in circuit.crossed_edges]


def _nontrivial_3_circuits(
    polyhedron: LabeledPolyhedron,
    geometries: Sequence[str],
    right_angled: bool,
    tolerance: float,
) -> List[Circuit]:
    return [
        c
        for c in enumerate_prismatic_circuits(
            polyhedron, 3, right_angled=right_angled, tolerance=tolerance
        )
        if not c.trivial and c.geometry in geometries
    ]


def spherical_reduce(
    polyhedron: LabeledPolyhedron,
    geometries: Sequence[str] = ("spherical",),
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> Tuple[List[LabeledPolyhedron], List[Tuple[Edge, ...]]]:
    """Split along nontrivial prismatic 3-circuits of the given classes until none remain.

    Orbifold inputs reduce along spherical circuits; the volume pipeline
    passes every class, which yields turnover-reduced components.
    """
    done: List[LabeledPolyhedron] = []
    queue = [polyhedron]
    used: List[Tuple[Edge, ...]] = []
    while queue:
        piece = queue.pop(0)
        circuits = _nontrivial_3_circuits(piece, geometries, right_angled, tolerance)
        if not circuits:
            done.append(piece)
            continue
        circuit = circuits[0]
        used.append(circuit.crossed_edges)
        result = split_along(piece, circuit, tolerance=tolerance)
        queue = [result.interior_part, result.exterior_part] + queue
    return done, used


def check_orbifold_preconditions(
    polyhedron: LabeledPolyhedron,
    *,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
) -> None:
    """Raise PreconditionViolated unless the input suits the decomposition loop."""
    if not polyhedron.is_trivalent:
        bad = [v for v in range(polyhedron.vertex_count) if polyhedron.degree(v) != 3]
        raise PreconditionViolated(f"vertices {bad} are not trivalent", witness=bad)
    if not right_angled:
        if not polyhedron.is_coxeter():
            bad = [list(e) for e, a in polyhedron.labels.items() if a.coxeter_order() is None]
            raise PreconditionViolated(f"edges {bad} are not labeled π/n", witness=bad)
        for v in range(polyhedron.vertex_count):
            if compare_with_pi(vertex_angle_sum(polyhedron, v), 1, tolerance).sign <= 0:
                raise PreconditionViolated(
                    f"labels at vertex {v} sum to at most π", witness=v
                )
    leftover = _nontrivial_3_circuits(
        polyhedron, ("spherical", "euclidean"), right_angled, tolerance
    )
    if leftover:
        raise PreconditionViolated(
            f"nontrivial {leftover[0].geometry} prismatic 3-circuit crossing "
            f"{list(leftover[0].crossed_edges)}; reduce along it first",
            witness=leftover[0].crossed_edges,
        )


def recognize_seifert_fibered(polyhedron: LabeledPolyhedron) -> bool:
    """A prism whose top and bottom edges are all labeled π/2.

    The tetrahedron case is not recognized.
    """
    if polyhedron.is_simplex:
        logger.info("Seifert-fibered recognition of tetrahedra is not supported")
        return False
    for structure in prism_structures(polyhedron):
        edges = structure.a_edges + structure.b_edges
        if all(polyhedron.labels[e].coxeter_order() == 2 for e in edges):
            return True
    return False


def _covering_neighborhood(
    polyhedron: LabeledPolyhedron,
    circuits: Sequence[Circuit],
    euclidean: Sequence[Circuit],
) -> Optional[NeighborhoodData]:
    for gamma in circuits:
        for hood in neighborhoods(polyhedron, gamma, euclidean=euclidean):
            if hood.covers(polyhedron):
                return hood
    return None


def decompose(
    polyhedron: LabeledPolyhedron,
    *,
    rng: Optional[random.Random] = None,
    right_angled: bool = False,
    tolerance: float = DEFAULT_TOLERANCE,
    step_budget: int = DEFAULT_STEP_BUDGET,
    strict_descent: bool = False,
    check_preconditions: bool = True,
) -> DecompositionResult:
    """Decompose along Euclidean prismatic 4-circuits.

    Args:
        rng: Randomizes the choice of circuit and the admissible-subset order.
        right_angled: Classify circuits as though every label were π/2.
        strict_descent: Raise when a split fails to lower the number of nontrivial
            circuits bounding a neighborhood.

    Raises:
        PreconditionViolated: The input is not a trivalent Coxeter input with
            spherical vertex links and only trivial spherical or Euclidean
            prismatic 3-circuits.
        DecompositionError: The step budget ran out, descent failed in strict mode,
            or a nontrivial circuit had no nontrivial boundary circuit to split along.
    """
    if check_preconditions:
        check_orbifold_preconditions(polyhedron, right_angled=right_angled, tolerance=tolerance)

    options = dict(right_angled=right_angled, tolerance=tolerance)
    base = polyhedron if polyhedron.name else polyhedron.with_name("P")
    result = DecompositionResult()
    work: List[LabeledPolyhedron] = [base]
    steps = 0

    while True:
        candidates = []
        for i, component in enumerate(work):
            euclidean = euclidean_4_circuits(component, **options)
            candidates.extend((i, gamma, euclidean) for gamma in euclidean if not gamma.trivial)
        if not candidates:
            break
        steps += 1
        if steps > step_budget:
            raise DecompositionError(f"step budget of {step_budget} exhausted")

        i, gamma, euclidean = rng.choice(candidates) if rng is not None else candidates[0]
        component = work[i]
        first, second = neighborhoods(component, gamma, euclidean=euclidean)
        if first.covers(component) or second.covers(component):
            work.pop(i)
            result.seifert_fibered.append(component)
            result.trace.append(
                TraceStep(
                    step=steps,
                    action="seifert-fibered",
                    component=component.name,
                    circuits=[_edges(gamma)],
                    note=f"neighborhood {1 if first.covers(component) else 2} covers every face",
                )
            )
            continue

        bounding = {
            delta.key: delta
            for delta in first.boundary + second.boundary
            if not delta.trivial
        }
        order = None
        if rng is not None:
            order = list(range(len(bounding)))
            rng.shuffle(order)
        chosen = maximal_admissible_subset(list(bounding.values()), order)
        if not chosen:
            raise DecompositionError(
                f"{component.name}: no nontrivial circuit bounds either neighborhood of "
                f"{list(gamma.crossed_edges)}, and neither neighborhood covers the component"
            )
        note = ""
        if first.borderline or second.borderline:
            note = "boundary decided by exactly 5 dual triangles"

        before = prismatic_complexity(work, include_trivial=False, **options)
        pieces = split_sequence(component, chosen, **options)
        work[i : i + 1] = pieces
        after = prismatic_complexity(work, include_trivial=False, **options)
        if after >= before:
            message = f"complexity did not drop splitting {component.name} ({before} -> {after})"
            if strict_descent:
                raise DecompositionError(message)
            logger.warning(message)
        result.trace.append(
            TraceStep(
                step=steps,
                action="split",
                component=component.name,
                circuits=[_edges(c) for c in chosen],
                complexity_before=before,
                complexity_after=after,
                note=note,
            )
        )

    for component in work:
        euclidean = euclidean_4_circuits(component, **options)
        hood = _covering_neighborhood(component, euclidean, euclidean)
        steps += 1
        if hood is not None:
            result.seifert_fibered.append(component)
            result.trace.append(
                TraceStep(
                    step=steps,
                    action="seifert-fibered",
                    component=component.name,
                    circuits=[_edges(hood.base)],
                    note=f"neighborhood {hood.index} of a trivial circuit covers every face",
                )
            )
        else:
            result.atoroidal.append(component)
            result.trace.append(
                TraceStep(step=steps, action="atoroidal", component=component.name)
            )
    return result


def decompose_orbifold(
    polyhedron: LabeledPolyhedron,
    *,
    rng: Optional[random.Random] = None,
    tolerance: float = DEFAULT_TOLERANCE,
    step_budget: int = DEFAULT_STEP_BUDGET,
    strict_descent: bool = False,
) -> DecompositionResult:
    """Reduce along spherical, then Euclidean, prismatic 3-circuits and decompose each piece."""
    named = polyhedron if polyhedron.name else polyhedron.with_name("P")
    if not named.is_trivalent:
        check_orbifold_preconditions(named, tolerance=tolerance)
    spherical_pieces, spherical_used = spherical_reduce(named, ("spherical",), tolerance=tolerance)
    pieces: List[LabeledPolyhedron] = []
    euclidean_used: List[Tuple[Edge, ...]] = []
    for piece in spherical_pieces:
        reduced, used = spherical_reduce(piece, ("euclidean",), tolerance=tolerance)
        pieces.extend(reduced)
        euclidean_used.extend(used)

    result = DecompositionResult(
        spherical_splits=spherical_used, euclidean3_splits=euclidean_used
    )
    for crossed in spherical_used + euclidean_used:
        result.trace.append(
            TraceStep(
                step=len(result.trace) + 1,
                action="spherical-split",
                component=named.name,
                circuits=[[list(e) for e in crossed]],
            )
        )
    for piece in pieces:
        run = decompose(
            piece,
            rng=rng,
            tolerance=tolerance,
            step_budget=step_budget,
            strict_descent=strict_descent,
        )
        result.seifert_fibered.extend(run.seifert_fibered)
        result.atoroidal.extend(run.atoroidal)
        for step in run.trace:
            result.trace.append(step.model_copy(update={"step": len(result.trace) + 1}))
    return result


@dataclass(frozen=True)
class CanonicityReport:
    consistent: bool
    trials: int
    signatures: Tuple[Tuple[str, ...], ...]

    @property
    def distinct(self) -> int:
        return len(self.signatures)


def check_canonicity(
    polyhedron: LabeledPolyhedron,
    trials: int = 20,
    seed: int = 0,
    **kwargs,
) -> CanonicityReport:
    """Compare the atoroidal components over the canonical run and ``trials`` randomized runs."""
    rng = random.Random(seed)
    seen: Counter = Counter()
    seen[tuple(decompose_orbifold(polyhedron, **kwargs).atoroidal_signature())] += 1
    for _ in range(trials):
        run = decompose_orbifold(polyhedron, rng=random.Random(rng.random()), **kwargs)
        seen[tuple(run.atoroidal_signature())] += 1
    signatures = tuple(sorted(seen))
    if len(signatures) > 1:
        logger.warning(
            "%s: %d distinct atoroidal decompositions over %d trials",
            polyhedron.name or "polyhedron",
            len(signatures),
            trials + 1,
        )
    return CanonicityReport(consistent=len(signatures) == 1, trials=trials, signatures=signatures)
