"""Dihedral angles stored exactly as rational multiples of π when possible."""

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Literal, Optional, Tuple, Union

logger = logging.getLogger(__name__)

Geometry = Literal["spherical", "euclidean", "hyperbolic"]

DEFAULT_TOLERANCE = 1e-9


@dataclass(frozen=True)
class Angle:
    """A dihedral angle.

    ``radians`` is always populated. ``pi_fraction`` is set when the angle is
    known exactly as π·p/q; sums of exact angles stay exact.
    """

    radians: float
    pi_fraction: Optional[Fraction] = None

    @classmethod
    def pi_over(cls, n: int) -> "Angle":
        if n < 1:
            raise ValueError(f"pi_over needs a positive integer, got {n}")
        return cls.from_pi_fraction(Fraction(1, n))

    @classmethod
    def from_pi_fraction(cls, value: Union[Fraction, int, str]) -> "Angle":
        fraction = parse_pi_fraction(value) if isinstance(value, str) else Fraction(value)
        return cls(radians=float(fraction) * math.pi, pi_fraction=fraction)

    @classmethod
    def from_radians(cls, value: float) -> "Angle":
        return cls(radians=float(value))

    @property
    def exact(self) -> bool:
        return self.pi_fraction is not None

    def coxeter_order(self) -> Optional[int]:
        """Return n when the angle is exactly π/n, otherwise None."""
        if self.pi_fraction is None or self.pi_fraction.numerator != 1:
            return None
        return self.pi_fraction.denominator

    def compare(self, other: "Angle", tolerance: float = 0.0) -> int:
        """Three-way comparison, exact when both sides are exact."""
        if self.exact and other.exact:
            diff = self.pi_fraction - other.pi_fraction
            return (diff > 0) - (diff < 0)
        diff = self.radians - other.radians
        if abs(diff) <= tolerance:
            return 0
        return 1 if diff > 0 else -1

    def __add__(self, other: "Angle") -> "Angle":
        if not isinstance(other, Angle):
            return NotImplemented
        if self.exact and other.exact:
            return Angle.from_pi_fraction(self.pi_fraction + other.pi_fraction)
        return Angle(radians=self.radians + other.radians)

    def __radd__(self, other):
        # lets sum() start from the integer 0
        if other == 0:
            return self
        return NotImplemented

    def key(self) -> str:
        """Stable text used when hashing labeled graphs."""
        if self.exact:
            return f"pi*{self.pi_fraction}"
        return f"{self.radians:.12f}"

    def __str__(self) -> str:
        if not self.exact:
            return f"{self.radians:.9g}"
        p, q = self.pi_fraction.numerator, self.pi_fraction.denominator
        if p == 0:
            return "0"
        head = "π" if p == 1 else f"{p}π"
        return head if q == 1 else f"{head}/{q}"


ZERO = Angle(radians=0.0, pi_fraction=Fraction(0))
RIGHT_ANGLE = Angle.pi_over(2)
THIRD_PI = Angle.pi_over(3)


def parse_pi_fraction(text: Union[str, Fraction, int]) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` as the rational multiplier of π."""
    if isinstance(text, (Fraction, int)):
        return Fraction(text)
    cleaned = text.strip()
    try:
        return Fraction(cleaned)
    except (ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"'{text}' is not a rational p/q") from exc


def angle_sum(angles: Iterable[Angle]) -> Angle:
    total = ZERO
    for angle in angles:
        total = total + angle
    return total


@dataclass(frozen=True)
class Comparison:
    """Outcome of comparing a label sum against a multiple of π.

    ``in_band`` is True when a floating comparison was decided by the
    tolerance rather than by a clear difference.
    """

    sign: int
    in_band: bool = False


def compare_with_pi(
    total: Angle,
    multiple: Union[int, Fraction],
    tolerance: float = DEFAULT_TOLERANCE,
) -> Comparison:
    """Compare ``total`` with ``multiple``·π."""
    target = Fraction(multiple)
    if total.exact:
        diff = total.pi_fraction - target
        return Comparison(sign=(diff > 0) - (diff < 0))
    diff = total.radians - float(target) * math.pi
    if abs(diff) <= tolerance:
        if diff != 0.0:
            logger.debug("sum %.15g decided equal to %sπ within tolerance", total.radians, target)
        return Comparison(sign=0, in_band=True)
    return Comparison(sign=1 if diff > 0 else -1)


def classify_sum(
    total: Angle,
    multiple: Union[int, Fraction],
    tolerance: float = DEFAULT_TOLERANCE,
) -> Tuple[Geometry, bool]:
    """Classify a label sum: above the threshold is spherical, equal Euclidean, below hyperbolic."""
    comparison = compare_with_pi(total, multiple, tolerance)
    if comparison.sign > 0:
        return "spherical", comparison.in_band
    if comparison.sign == 0:
        return "euclidean", comparison.in_band
    return "hyperbolic", comparison.in_band
