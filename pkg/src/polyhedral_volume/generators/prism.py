"""Labeled n-prisms for fixtures and the ``prism-gen`` command.

Vertices ``0..n-1`` run around the top face and ``n..2n-1`` around the
bottom, with ``i`` above ``n + i``. Lateral face ``i`` has top edge
``a_i = (i, i+1)``, bottom edge ``b_i = (n+i, n+i+1)``, and meets lateral
``i + 1`` along ``c_i = (i+1, n+i+1)`` (indices mod n).
"""

import logging
import re
from typing import List, Optional, Sequence, Tuple

from polyhedral_volume.core.angles import RIGHT_ANGLE, THIRD_PI, Angle
from polyhedral_volume.core.errors import DomainError, InputError
from polyhedral_volume.core.numerics import solve_basic_prism
from polyhedral_volume.core.polyhedron import (
    Edge,
    LabeledPolyhedron,
    build_polyhedron,
    edge_key,
)

logger = logging.getLogger(__name__)

LateralPair = Tuple[Angle, Angle]

PATTERNS = ("alternating", "basic:r,s", "right-horizontal", "single-euclidean", "labels:a,b,c")

RIGHT_PAIR: LateralPair = (RIGHT_ANGLE, RIGHT_ANGLE)
TOP_THIRD: LateralPair = (THIRD_PI, RIGHT_ANGLE)
BOTTOM_THIRD: LateralPair = (RIGHT_ANGLE, THIRD_PI)


def prism_faces(n: int) -> List[Tuple[int, ...]]:
    """Top, bottom, then laterals ``0..n-1``."""
    top = tuple(range(n))
    bottom = tuple(reversed(range(n, 2 * n)))
    laterals = [((i + 1) % n, i, n + i, n + (i + 1) % n) for i in range(n)]
    return [top, bottom] + laterals


def a_edge(n: int, i: int) -> Edge:
    return edge_key(i % n, (i + 1) % n)


def b_edge(n: int, i: int) -> Edge:
    return edge_key(n + i % n, n + (i + 1) % n)


def c_edge(n: int, i: int) -> Edge:
    return edge_key((i + 1) % n, n + (i + 1) % n)


def build_prism(
    n: int,
    laterals: Sequence[LateralPair],
    c_labels: Sequence[Angle],
    *,
    name: str = "",
) -> LabeledPolyhedron:
    """An n-prism with ``(a_i, b_i)`` from ``laterals`` and ``c_i`` from ``c_labels``."""
    if n < 3:
        raise DomainError(f"prisms need n ≥ 3, got {n}")
    if len(laterals) != n or len(c_labels) != n:
        raise DomainError(f"need {n} lateral pairs and {n} c labels")
    labels = {}
    for i, (a, b) in enumerate(laterals):
        labels[a_edge(n, i)] = a
        labels[b_edge(n, i)] = b
        labels[c_edge(n, i)] = c_labels[i]
    return build_polyhedron(2 * n, prism_faces(n), labels, name=name)


def basic_laterals(n: int, r: int, s: int) -> List[LateralPair]:
    """Lateral pairs of the basic prism decomposing into r C_1 and s C_2 cubes.

    Laterals 0 and 1 are right-angled; each later lateral carries one π/3,
    switching side for the first r steps and keeping it for the last s.
    """
    if n < 5:
        raise DomainError(f"basic prisms need n ≥ 5, got {n}")
    if r < 0 or s < 0 or r + s != n - 3:
        raise DomainError(f"need r, s ≥ 0 with r + s = n - 3 = {n - 3}, got ({r}, {s})")
    pairs = [RIGHT_PAIR, RIGHT_PAIR, TOP_THIRD]
    for step in range(r + s):
        previous = pairs[-1]
        if step < r:
            pairs.append(BOTTOM_THIRD if previous == TOP_THIRD else TOP_THIRD)
        else:
            pairs.append(previous)
    return pairs


def alternating_prism(n: int) -> LabeledPolyhedron:
    return build_prism(
        n, basic_laterals(n, n - 3, 0), [RIGHT_ANGLE] * n, name=f"alternating-{n}-prism"
    )


def basic_prism(n: int, r: int, s: int) -> LabeledPolyhedron:
    laterals = basic_laterals(n, r, s)
    if r and s:
        angles = solve_basic_prism(r, s)
        logger.info("basic prism (%d, %d): μ = %.9f, ν = %.9f", r, s, angles.mu, angles.nu)
    return build_prism(n, laterals, [RIGHT_ANGLE] * n, name=f"basic-{r}-{s}-{n}-prism")


def right_horizontal_prism(n: int, c: Optional[Angle] = None) -> LabeledPolyhedron:
    """Every top and bottom edge π/2; a Seifert-fibered orbifold input."""
    c = c or RIGHT_ANGLE
    return build_prism(n, [RIGHT_PAIR] * n, [c] * n, name=f"right-horizontal-{n}-prism")


def single_euclidean_prism(n: int) -> LabeledPolyhedron:
    """Right-angled laterals 0 and n//2 give the only Euclidean prismatic 4-circuit."""
    if n < 6:
        raise DomainError(f"a nontrivial Euclidean 4-circuit needs n ≥ 6, got {n}")
    laterals = []
    flip = False
    for i in range(n):
        if i in (0, n // 2):
            laterals.append(RIGHT_PAIR)
            continue
        laterals.append(BOTTOM_THIRD if flip else TOP_THIRD)
        flip = not flip
    return build_prism(n, laterals, [RIGHT_ANGLE] * n, name=f"single-euclidean-{n}-prism")


def uniform_prism(n: int, a: int, b: int, c: int) -> LabeledPolyhedron:
    """Every a edge π/a, every b edge π/b, every c edge π/c."""
    for k in (a, b, c):
        if k < 2:
            raise DomainError(f"labels must be π/k with k ≥ 2, got k = {k}")
    pair = (Angle.pi_over(a), Angle.pi_over(b))
    name = f"labels-{a}-{b}-{c}-{n}-prism"
    return build_prism(n, [pair] * n, [Angle.pi_over(c)] * n, name=name)


def _integers(text: str, count: int, pattern: str) -> List[int]:
    parts = text.split(",")
    if len(parts) != count or not all(re.fullmatch(r"\d+", p.strip()) for p in parts):
        raise InputError(f"pattern '{pattern}' needs {count} comma-separated integers")
    return [int(p) for p in parts]


def generate_prism(n: int, pattern: str) -> LabeledPolyhedron:
    """Build the prism named by a ``prism-gen`` pattern.

    Raises:
        InputError: Unknown pattern or malformed parameters.
        DomainError: The pattern does not exist for this n.
    """
    head, _, rest = pattern.partition(":")
    if head == "alternating" and not rest:
        return alternating_prism(n)
    if head == "basic":
        r, s = _integers(rest, 2, pattern)
        return basic_prism(n, r, s)
    if head == "right-horizontal" and not rest:
        return right_horizontal_prism(n)
    if head == "single-euclidean" and not rest:
        return single_euclidean_prism(n)
    if head == "labels":
        a, b, c = _integers(rest, 3, pattern)
        return uniform_prism(n, a, b, c)
    raise InputError(f"unknown pattern '{pattern}' (expected one of: {', '.join(PATTERNS)})")
