"""Lower and upper volume bounds for non-obtuse hyperbolic polyhedra.

Every formula returns a ``LinearVolume``: an exact rational combination of
V8, V3 and vol C_1(π/3), evaluated to a float only on demand.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Dict, List, Literal, Optional, Tuple, Union

import yaml
from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from polyhedral_volume.core.andreev import (
    RealizabilityReport,
    check_andreev,
    check_generalized,
)
from polyhedral_volume.core.angles import (
    DEFAULT_TOLERANCE,
    RIGHT_ANGLE,
    THIRD_PI,
    parse_pi_fraction,
)
from polyhedral_volume.core.circuits import enumerate_prismatic_circuits
from polyhedral_volume.core.config import format_validation_errors
from polyhedral_volume.core.decompose import decompose, spherical_reduce
from polyhedral_volume.core.errors import (
    DecompositionError,
    HypothesisViolated,
    InputError,
    NotRealizable,
    OddVertexCount,
    PreconditionViolated,
    TooFewVertices,
)
from polyhedral_volume.core.numerics import c1_third, c1_volume, v3, v8
from polyhedral_volume.core.polyhedron import LabeledPolyhedron, prism_structure
from polyhedral_volume.core.rewrite import (
    TruncationCounts,
    full_truncation,
    hyperideal_vertices,
    truncate,
    truncate_vertices,
)

logger = logging.getLogger(__name__)

TheoremId = Literal[
    "no-prismatic-4-circuit-lower",
    "prismatic-3-circuit-lower",
    "right-angled-lower",
    "small-angle-lower",
    "prism-sandwich-lower",
    "prism-region-lower",
    "full-truncation-upper",
    "ideal-truncation-upper",
    "vertex-count-upper",
    "prism-upper",
]

UNQUANTIFIED = "positive-but-unquantified"
EXCEPTIONAL = "exceptional-region"
CLAMPED = "clamped-to-zero"


@dataclass(frozen=True)
class LinearVolume:
    """v8·V8 + v3·V3 + c1·vol C_1(π/3) + extra."""

    v8: Fraction = Fraction(0)
    v3: Fraction = Fraction(0)
    c1: Fraction = Fraction(0)
    extra: float = 0.0

    @property
    def value(self) -> float:
        return (
            float(self.v8) * v8()
            + float(self.v3) * v3()
            + float(self.c1) * c1_third()
            + self.extra
        )

    def __add__(self, other: "LinearVolume") -> "LinearVolume":
        return LinearVolume(
            self.v8 + other.v8, self.v3 + other.v3, self.c1 + other.c1, self.extra + other.extra
        )

    def scaled(self, factor: Union[int, Fraction]) -> "LinearVolume":
        factor = Fraction(factor)
        return LinearVolume(
            self.v8 * factor, self.v3 * factor, self.c1 * factor, self.extra * float(factor)
        )

    @property
    def is_zero(self) -> bool:
        return not (self.v8 or self.v3 or self.c1 or self.extra)

    def __str__(self) -> str:
        terms = []
        for coefficient, symbol in ((self.v8, "V8"), (self.v3, "V3"), (self.c1, "C1")):
            if coefficient:
                terms.append(symbol if coefficient == 1 else f"{coefficient}·{symbol}")
        if self.extra:
            terms.append(f"{self.extra:.9g}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


ZERO = LinearVolume()


def lower_no_prismatic4(n4: int, n3: int) -> LinearVolume:
    """(4N4 + N3 - 8)/32 · V8, for inputs without prismatic 4-circuits."""
    return LinearVolume(v8=Fraction(4 * n4 + n3 - 8, 32))


def lower_with_m3(n4: int, n3: int, m3: int) -> LinearVolume:
    """(4N4 + N3 + M3 - 8)/32 · V8, counting prismatic 3-circuits as well."""
    return LinearVolume(v8=Fraction(4 * n4 + n3 + m3 - 8, 32))


def right_angled_lower(ideal: int, finite: int) -> LinearVolume:
    """(4N∞ + N_F - 8)/32 · V8 for right-angled polyhedra."""
    return LinearVolume(v8=Fraction(4 * ideal + finite - 8, 32))


def pi3_lower(n: int, m: int) -> LinearVolume:
    """(N + 2M)·3V3/8 when every label is at most π/3.

    Raises:
        HypothesisViolated: Fewer than 8 vertices.
    """
    if n < 8:
        raise HypothesisViolated(f"the small-angle bound needs N ≥ 8 vertices, got {n}")
    return LinearVolume(v3=Fraction(3 * (n + 2 * m), 8))


def _check_prism_n(n: int) -> None:
    if n < 4:
        raise HypothesisViolated(f"prism bounds need n ≥ 4, got {n}")


def prism_lower(n: int) -> LinearVolume:
    _check_prism_n(n)
    return LinearVolume(c1=Fraction(n - 3))


def prism_upper(n: int) -> LinearVolume:
    _check_prism_n(n)
    return LinearVolume(v8=Fraction(3 * n - 4, 2))


def prism_region_lower(
    vertices: int, exceptional: bool = False, lambda_known: Optional[float] = None
) -> LinearVolume:
    """Lower bound for a prism region holding ``vertices`` vertices of the polyhedron.

    Regions with at least 10 vertices get (V/2 - 3)·vol C_1(π/3). Smaller
    regions get one copy of vol C_1(λ) when λ is known and 0 otherwise;
    exceptional regions always get 0.

    Raises:
        OddVertexCount: ``vertices`` is odd.
        HypothesisViolated: Fewer than 2 vertices.
    """
    if vertices % 2:
        raise OddVertexCount(f"prism regions hold an even number of vertices, got {vertices}")
    if vertices < 2:
        raise HypothesisViolated(f"prism regions hold at least 2 vertices, got {vertices}")
    if vertices >= 10:
        return LinearVolume(c1=Fraction(vertices, 2) - 3)
    if exceptional or lambda_known is None:
        return ZERO
    return LinearVolume(extra=c1_volume(lambda_known))


def general_upper(n4: int, e33: int, e34: int, n2: int) -> LinearVolume:
    """(n4 + E33 - 1)/2 · V8 + 5(E34 + n2)/8 · V3."""
    return LinearVolume(v8=Fraction(n4 + e33 - 1, 2), v3=Fraction(5 * (e34 + n2), 8))


def ideal_upper(ideal: int) -> LinearVolume:
    """(N∞ - 4)/2 · V8 for right-angled polyhedra with only ideal vertices."""
    return LinearVolume(v8=Fraction(ideal - 4, 2))


def weak_upper(n4: int, n3: int) -> LinearVolume:
    """(2N4 + 3N3 - 2)/4 · V8 + (15N3 + 20N4)/16 · V3."""
    return LinearVolume(v8=Fraction(2 * n4 + 3 * n3 - 2, 4), v3=Fraction(15 * n3 + 20 * n4, 16))


def corollary_bounds(n: int) -> Tuple[float, float]:
    """Bounds in the vertex count alone, for inputs without prismatic 4-circuits."""
    return (n - 8) / 32 * v8(), 4.0166 * n - 1.8319


class Contribution(BaseModel):
    component: str
    theorem: TheoremId
    value: float
    exact: str
    flags: List[str] = Field(default_factory=list)

    @classmethod
    def of(
        cls,
        component: str,
        theorem: TheoremId,
        volume: LinearVolume,
        flags: Optional[List[str]] = None,
    ) -> "Contribution":
        return cls(
            component=component,
            theorem=theorem,
            value=volume.value,
            exact=str(volume),
            flags=list(flags or []),
        )


class BoundReport(BaseModel):
    """Assembled bounds with the contributions behind them."""

    name: str = ""
    lower: float
    upper: float
    lower_exact: str
    upper_exact: str
    breakdown: List[Contribution] = Field(default_factory=list)
    lower_candidates: List[Contribution] = Field(default_factory=list)
    upper_candidates: List[Contribution] = Field(default_factory=list)
    counts: Dict[str, int] = Field(default_factory=dict)
    flags: List[str] = Field(default_factory=list)


def _clamped(volume: LinearVolume, flags: List[str], where: str) -> LinearVolume:
    if volume.value < 0:
        logger.warning("%s: formula value %.6g is negative; using 0", where, volume.value)
        flags.append(CLAMPED)
        return ZERO
    return volume


def satisfies_prism_angle_hypothesis(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> bool:
    """No label strictly between π/3 and π/2."""
    return not any(
        angle.compare(THIRD_PI, tolerance) > 0 and angle.compare(RIGHT_ANGLE, tolerance) < 0
        for angle in polyhedron.labels.values()
    )


def _check_realizable(polyhedron: LabeledPolyhedron, tolerance: float) -> RealizabilityReport:
    structure = prism_structure(polyhedron)
    try:
        if structure is not None and structure.n == 3:
            report = check_andreev(polyhedron, tolerance)
        else:
            report = check_generalized(polyhedron, tolerance)
    except TooFewVertices as e:
        raise HypothesisViolated(str(e)) from e
    if not report.realizable:
        raise NotRealizable(
            f"{polyhedron.name or 'polyhedron'} violates {', '.join(report.violated_conditions)}",
            report=report,
        )
    return report


def _region_is_exceptional(component: LabeledPolyhedron) -> bool:
    """Every lateral a or b edge on an original face is labeled π/2."""
    structure = prism_structure(component)
    if structure is None:
        return False
    for i, lateral in enumerate(structure.laterals):
        if component.face_kinds[lateral] != "original":
            continue
        for e in (structure.a_edges[i], structure.b_edges[i]):
            if component.labels[e].coxeter_order() != 2:
                return False
    return True


def _atoroidal_counts(component: LabeledPolyhedron) -> Tuple[int, int]:
    ideal = sum(1 for kind in component.face_kinds if kind in ("quadrilateral", "ideal"))
    finite = len(component.original_vertices()) + sum(
        1 for kind in component.face_kinds if kind == "triangle"
    )
    return ideal, finite


def _decomposition_lower(
    polyhedron: LabeledPolyhedron,
    tolerance: float,
    flags: List[str],
) -> Tuple[LinearVolume, List[Contribution]]:
    pieces, used = spherical_reduce(
        polyhedron, ("spherical", "euclidean", "hyperbolic"), tolerance=tolerance
    )
    if used:
        logger.info("turnover reduction used %d prismatic 3-circuits", len(used))
    total = ZERO
    contributions: List[Contribution] = []
    for piece in pieces:
        degree4 = [v for v in range(piece.vertex_count) if piece.degree(v) == 4]
        shadow = truncate_vertices(piece, degree4, kinds={v: "ideal" for v in degree4})
        result = decompose(shadow, right_angled=True, tolerance=tolerance)
        for component in result.atoroidal:
            local: List[str] = []
            ideal, finite = _atoroidal_counts(component)
            volume = _clamped(right_angled_lower(ideal, finite), local, component.name)
            total += volume
            contributions.append(
                Contribution.of(component.name, "right-angled-lower", volume, local)
            )
        for component in result.seifert_fibered:
            local = []
            structure = prism_structure(component)
            whole = all(kind == "original" for kind in component.face_kinds)
            if (
                structure is not None
                and whole
                and satisfies_prism_angle_hypothesis(component, tolerance)
            ):
                volume = prism_lower(structure.n)
                total += volume
                contributions.append(
                    Contribution.of(component.name, "prism-sandwich-lower", volume)
                )
                continue
            count = len(component.original_vertices())
            exceptional = count <= 8 and _region_is_exceptional(component)
            try:
                volume = prism_region_lower(count, exceptional)
            except (OddVertexCount, HypothesisViolated) as e:
                logger.warning("%s: %s", component.name, e)
                local.append(UNQUANTIFIED)
                volume = ZERO
            else:
                if exceptional:
                    local.append(EXCEPTIONAL)
                elif volume.is_zero:
                    local.append(UNQUANTIFIED)
            total += volume
            contributions.append(
                Contribution.of(component.name, "prism-region-lower", volume, local)
            )
            flags.extend(f"{component.name}: {flag}" for flag in local)
    return total, contributions


def estimate(
    polyhedron: LabeledPolyhedron, tolerance: float = DEFAULT_TOLERANCE
) -> BoundReport:
    """Best available lower and upper bounds for a realizable labeled polyhedron.

    Raises:
        NotRealizable: The realizability check fails.
        HypothesisViolated: The input has 4 or fewer vertices.
    """
    _check_realizable(polyhedron, tolerance)
    name = polyhedron.name or "P"
    flags: List[str] = []
    hyperideal = hyperideal_vertices(polyhedron, tolerance)
    if hyperideal:
        polyhedron = truncate(polyhedron, tolerance)
        flags.append(f"hyperideal vertices {hyperideal} truncated; bounds refer to the truncation")

    n4 = sum(1 for v in range(polyhedron.vertex_count) if polyhedron.degree(v) == 4)
    n3 = polyhedron.vertex_count - n4
    m3 = len(enumerate_prismatic_circuits(polyhedron, 3, tolerance=tolerance))
    p4 = len(enumerate_prismatic_circuits(polyhedron, 4, tolerance=tolerance))
    truncation = full_truncation(polyhedron).counts
    counts = _counts(polyhedron.vertex_count, n3, n4, m3, p4, truncation)
    structure = prism_structure(polyhedron)

    upper_options: List[Tuple[TheoremId, LinearVolume]] = [
        (
            "full-truncation-upper",
            general_upper(truncation.n4, truncation.e33, truncation.e34, truncation.n2),
        ),
        ("vertex-count-upper", weak_upper(n4, n3)),
    ]
    if truncation.finite_vertices == 0:
        upper_options.append(("ideal-truncation-upper", ideal_upper(truncation.ideal_vertices)))
    if structure is not None and structure.n >= 4:
        upper_options.append(("prism-upper", prism_upper(structure.n)))

    lower_options: List[Tuple[LinearVolume, List[Contribution]]] = []
    if p4 == 0:
        theorem: TheoremId = "prismatic-3-circuit-lower" if m3 else "no-prismatic-4-circuit-lower"
        local: List[str] = []
        volume = _clamped(lower_with_m3(n4, n3, m3), local, name)
        lower_options.append((volume, [Contribution.of(name, theorem, volume, local)]))
    if polyhedron.vertex_count >= 8 and all(
        angle.compare(THIRD_PI, tolerance) <= 0 for angle in polyhedron.labels.values()
    ):
        volume = pi3_lower(polyhedron.vertex_count, m3)
        lower_options.append((volume, [Contribution.of(name, "small-angle-lower", volume)]))
    prism_ok = (
        structure is not None
        and structure.n >= 4
        and satisfies_prism_angle_hypothesis(polyhedron, tolerance)
    )
    if prism_ok:
        volume = prism_lower(structure.n)
        lower_options.append((volume, [Contribution.of(name, "prism-sandwich-lower", volume)]))
    if p4 and not prism_ok:
        try:
            lower_options.append(_decomposition_lower(polyhedron, tolerance, flags))
        except (PreconditionViolated, DecompositionError) as e:
            logger.warning("%s: decomposition failed: %s", name, e)
            flags.append(f"decomposition failed: {e}")
    if not lower_options:
        flags.append("no lower bound applies")
        lower_options.append((ZERO, []))

    lower, breakdown = max(lower_options, key=lambda option: option[0].value)
    _, upper = min(upper_options, key=lambda option: option[1].value)
    return BoundReport(
        name=name,
        lower=lower.value,
        upper=upper.value,
        lower_exact=str(lower),
        upper_exact=str(upper),
        breakdown=breakdown,
        lower_candidates=[c for _, option in lower_options for c in option],
        upper_candidates=[
            Contribution.of(name, theorem, volume) for theorem, volume in upper_options
        ],
        counts=counts,
        flags=flags,
    )


def _counts(
    n: int, n3: int, n4: int, m3: int, p4: int, truncation: TruncationCounts
) -> Dict[str, int]:
    return {
        "N": n,
        "N3": n3,
        "N4": n4,
        "M3": m3,
        "prismatic_4_circuits": p4,
        "n2": truncation.n2,
        "n3": truncation.n3,
        "n4": truncation.n4,
        "E33": truncation.e33,
        "E34": truncation.e34,
        "N_ideal": truncation.ideal_vertices,
        "N_finite": truncation.finite_vertices,
    }


class StatedVolume(BaseModel):
    """A contribution quoted as exact multiples of V8, V3 and vol C_1(π/3)."""

    model_config = ConfigDict(extra="allow")

    v8: str = "0"
    v3: str = "0"
    c1: str = "0"

    @field_validator("v8", "v3", "c1", mode="before")
    @classmethod
    def validate_fraction(cls, v):
        v = str(v)
        parse_pi_fraction(v)
        return v

    def volume(self) -> LinearVolume:
        return LinearVolume(
            v8=parse_pi_fraction(self.v8),
            v3=parse_pi_fraction(self.v3),
            c1=parse_pi_fraction(self.c1),
        )


class ComponentEntry(BaseModel):
    model_config = ConfigDict(extra="allow")

    name: str
    kind: Literal["prism", "right-angled", "prism-region"]
    n: Optional[int] = Field(default=None, description="Prism size")
    ideal_vertices: Optional[int] = Field(default=None, ge=0)
    finite_vertices: Optional[int] = Field(default=None, ge=0)
    vertices: Optional[int] = Field(
        default=None, ge=0, description="Vertices of the polyhedron in a prism region"
    )
    exceptional: bool = False
    stated: Optional[StatedVolume] = None

    def formula(self) -> Tuple[TheoremId, LinearVolume]:
        if self.kind == "prism":
            if self.n is None:
                raise InputError(f"component {self.name}: prism needs n")
            return "prism-sandwich-lower", prism_lower(self.n)
        if self.kind == "right-angled":
            if self.ideal_vertices is None or self.finite_vertices is None:
                raise InputError(
                    f"component {self.name}: right-angled needs ideal_vertices and finite_vertices"
                )
            volume = right_angled_lower(self.ideal_vertices, self.finite_vertices)
            return "right-angled-lower", volume
        if self.vertices is None:
            raise InputError(f"component {self.name}: prism-region needs vertices")
        return "prism-region-lower", prism_region_lower(self.vertices, self.exceptional)


class ComponentCounts(BaseModel):
    n2: int = Field(ge=0)
    n4: int = Field(ge=0)
    e33: int = Field(ge=0)
    e34: int = Field(ge=0)


class ComponentFixture(BaseModel):
    """Per-component data for a polyhedron given only through its decomposition."""

    model_config = ConfigDict(extra="allow")

    name: str = ""
    components: List[ComponentEntry]
    counts: ComponentCounts

    @classmethod
    def from_yaml(cls, path: Path) -> "ComponentFixture":
        try:
            with open(path) as f:
                data = yaml.safe_load(f)
        except yaml.YAMLError as e:
            raise InputError(f"{path}: {e}") from e
        if not isinstance(data, dict):
            raise InputError(f"{path} must contain a mapping")
        try:
            return cls(**data)
        except ValidationError as e:
            raise InputError("\n".join(format_validation_errors(e))) from e


def estimate_from_components(fixture: ComponentFixture, use_stated: bool = True) -> BoundReport:
    """Sum per-component lower bounds; the upper bound comes from the full-truncation counts.

    With ``use_stated`` the quoted contributions replace the formula values;
    every disagreement is flagged either way.
    """
    flags: List[str] = []
    breakdown: List[Contribution] = []
    total = ZERO
    for entry in fixture.components:
        theorem, volume = entry.formula()
        local: List[str] = []
        if entry.kind == "prism-region" and volume.is_zero:
            local.append(EXCEPTIONAL if entry.exceptional else UNQUANTIFIED)
        if entry.stated is not None:
            stated = entry.stated.volume()
            if stated != volume:
                message = f"stated {stated} differs from formula {volume}"
                local.append(message)
                flags.append(f"{entry.name}: {message}")
                logger.warning("%s: %s", entry.name, message)
                if use_stated:
                    volume = stated
        volume = _clamped(volume, local, entry.name)
        total += volume
        breakdown.append(Contribution.of(entry.name, theorem, volume, local))

    c = fixture.counts
    upper = general_upper(c.n4, c.e33, c.e34, c.n2)
    return BoundReport(
        name=fixture.name,
        lower=total.value,
        upper=upper.value,
        lower_exact=str(total),
        upper_exact=str(upper),
        breakdown=breakdown,
        upper_candidates=[Contribution.of(fixture.name, "full-truncation-upper", upper)],
        counts={"n2": c.n2, "n4": c.n4, "E33": c.e33, "E34": c.e34},
        flags=flags,
    )
