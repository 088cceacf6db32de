"""Volume formulas: the Lobachevsky function, Lambert cubes and Coxeter prisms.

All values are double precision. Integrals go through ``scipy.integrate``
and root finding through ``scipy.optimize.brentq``.
"""

import logging
import math
from dataclasses import dataclass
from functools import cache
from typing import Literal, NamedTuple, Optional, Tuple

import numpy as np
from scipy import integrate, optimize

from polyhedral_volume.core.errors import DomainError, NoSolution

logger = logging.getLogger(__name__)

CubeFamily = Literal["C1", "C2"]

QUADRATURE_TOLERANCE = 1e-12
HALF_PI = math.pi / 2

# volume of C_2(0); the double-integral oracle below reproduces it
C2_BASE_VOLUME = 0.50192


def lobachevsky(theta: float, epsabs: float = QUADRATURE_TOLERANCE) -> float:
    """Λ(θ) = -∫_0^θ log|2 sin t| dt, for any real θ.

    The argument is reduced to [-π/2, π/2] using oddness and π-periodicity.
    The logarithmic singularity at 0 is integrated in closed form, leaving
    the smooth remainder log(sin t / t) for quadrature.
    """
    reduced = math.remainder(float(theta), math.pi)
    t = abs(reduced)
    if t == 0.0:
        return 0.0
    remainder, _ = integrate.quad(
        lambda u: np.log(np.sinc(u / math.pi)), 0.0, t, epsabs=epsabs, epsrel=1e-13
    )
    value = t - t * math.log(2.0 * t) - remainder
    return math.copysign(value, reduced)


@cache
def v3() -> float:
    """Volume of the regular ideal tetrahedron, 3Λ(π/3)."""
    return 3.0 * lobachevsky(math.pi / 3)


@cache
def v8() -> float:
    """Volume of the regular ideal octahedron, 8Λ(π/4)."""
    return 8.0 * lobachevsky(math.pi / 4)


@cache
def c1_third() -> float:
    """Volume of the Lambert cube C_1(π/3)."""
    return c1_volume(math.pi / 3)


def _check_mu(mu: float, *, allow_zero: bool = True) -> float:
    mu = float(mu)
    if not (0.0 <= mu < HALF_PI) or (not allow_zero and mu == 0.0):
        interval = "[0, π/2)" if allow_zero else "(0, π/2)"
        raise DomainError(f"μ = {mu} lies outside {interval}")
    return mu


def cosh_rho(family: CubeFamily, mu: float) -> float:
    mu = _check_mu(mu)
    if family == "C1":
        c = math.cos(mu) ** 2
        return math.sqrt((1.0 + 24.0 * c + math.sqrt(1.0 + 48.0 * c)) / (32.0 * c))
    if family == "C2":
        c = math.cos(mu)
        return math.sqrt((3.0 * c + 1.0) / (4.0 * c))
    raise DomainError(f"unknown cube family {family!r}")


def rho(family: CubeFamily, mu: float) -> float:
    """Length of the edge opposite the μ edge in C_1(μ) or C_2(μ)."""
    return math.acosh(max(1.0, cosh_rho(family, mu)))


def principal_parameter(alpha: float, beta: float, edge_length: float) -> float:
    denominator = math.cos(alpha) * math.cos(beta)
    if abs(denominator) < 1e-15:
        return HALF_PI
    radicand = math.cosh(edge_length) ** 2 - math.sin(alpha) ** 2 * math.sin(beta) ** 2
    return math.atan(math.sqrt(max(radicand, 0.0)) / denominator)


def _check_angles(*angles: float) -> None:
    for angle in angles:
        if not 0.0 <= angle <= HALF_PI + 1e-15:
            raise DomainError(f"essential angle {angle} lies outside [0, π/2]")


def _is_third_pi(angle: float) -> bool:
    return abs(angle - math.pi / 3) < 1e-12


def lambert_volume(
    alpha: float, beta: float, gamma: float, edge_length: Optional[float] = None
) -> float:
    """Volume of the Lambert cube with essential angles α, β, γ.

    ``edge_length`` is the length of the edge carrying γ's opposite; when
    omitted and α = β = π/3 it is taken from the C_1 family.

    Raises:
        DomainError: An angle outside [0, π/2], or a missing edge length.
    """
    _check_angles(alpha, beta, gamma)
    if edge_length is None:
        if not (_is_third_pi(alpha) and _is_third_pi(beta)):
            raise DomainError("an edge length is needed unless α = β = π/3")
        if gamma >= HALF_PI:
            theta = HALF_PI
        else:
            theta = principal_parameter(alpha, beta, rho("C1", gamma))
    else:
        theta = principal_parameter(alpha, beta, edge_length)
    L = lobachevsky
    return 0.25 * (
        L(alpha + theta)
        - L(alpha - theta)
        + L(beta + theta)
        - L(beta - theta)
        + L(gamma + theta)
        - L(gamma - theta)
        - L(2 * theta)
        + 2 * L(HALF_PI - theta)
    )


def lambert_volume_degenerate(
    alpha: float, beta: float, edge_length: Optional[float] = None
) -> float:
    """Lambert cube volume with γ = 0, written with 4Λ(π/2 - θ)."""
    _check_angles(alpha, beta)
    if edge_length is None:
        if not (_is_third_pi(alpha) and _is_third_pi(beta)):
            raise DomainError("an edge length is needed unless α = β = π/3")
        edge_length = rho("C1", 0.0)
    theta = principal_parameter(alpha, beta, edge_length)
    L = lobachevsky
    return 0.25 * (
        L(alpha + theta)
        - L(alpha - theta)
        + L(beta + theta)
        - L(beta - theta)
        + 4 * L(HALF_PI - theta)
    )


def c1_volume(mu: float) -> float:
    """Volume of C_1(μ), the Lambert cube with essential angles (π/3, π/3, μ).

    Decreasing and concave in μ, since the second derivative is -ρ_1'/2 and
    ρ_1 increases; DESIGN.md ("Convexity") records why this is concavity.
    """
    return lambert_volume(math.pi / 3, math.pi / 3, _check_mu(mu))


def _schlafli_integral(family: CubeFamily, mu: float, epsabs: float) -> float:
    value, _ = integrate.quad(lambda t: rho(family, t), 0.0, mu, epsabs=epsabs, limit=200)
    return value


def c1_volume_by_integration(mu: float, epsabs: float = QUADRATURE_TOLERANCE) -> float:
    """V_1(0) - ½∫_0^μ ρ_1(t) dt."""
    mu = _check_mu(mu)
    return c1_volume(0.0) - 0.5 * _schlafli_integral("C1", mu, epsabs)


def c2_volume(mu: float, epsabs: float = QUADRATURE_TOLERANCE) -> float:
    """V_2(0) - ½∫_0^μ ρ_2(t) dt."""
    mu = _check_mu(mu)
    return C2_BASE_VOLUME - 0.5 * _schlafli_integral("C2", mu, epsabs)


def c2_base_volume_by_quadrature(epsabs: float = 1e-10) -> float:
    """Independent value of V_2(0) as ∬ dx dy / (1 - x² - y²) over [0, √2/2] × [0, 1/2]."""
    value, _ = integrate.dblquad(
        lambda y, x: 1.0 / (1.0 - x * x - y * y),
        0.0,
        math.sqrt(2.0) / 2.0,
        0.0,
        0.5,
        epsabs=epsabs,
    )
    return value


@dataclass(frozen=True)
class CubeSpec:
    """A member of the C_1 or C_2 cube family."""

    family: CubeFamily
    mu: float

    @property
    def essential_angles(self) -> Tuple[float, float, float]:
        return math.pi / 3, math.pi / 3, self.mu

    @property
    def edge_length(self) -> float:
        return rho(self.family, self.mu)

    def volume(self) -> float:
        if self.family == "C1":
            return c1_volume(self.mu)
        return c2_volume(self.mu)


def alternating_prism_volume(n: int) -> float:
    """(n - 3) copies of C_1(π/(2(n - 3)))."""
    if n < 5:
        raise DomainError(f"the alternating prism needs n ≥ 5, got {n}")
    return (n - 3) * c1_volume(math.pi / (2 * (n - 3)))


class BasicPrismAngles(NamedTuple):
    mu: Optional[float]
    nu: Optional[float]


def solve_basic_prism(r: int, s: int, xtol: float = 1e-13) -> BasicPrismAngles:
    """Angles (μ, ν) with rμ + sν = π/2 and ρ_1(μ) = ρ_2(ν).

    With s = 0 only μ is defined, with r = 0 only ν.

    Raises:
        DomainError: Negative counts, or r + s = 0.
        NoSolution: The residual does not change sign on the bracket.
    """
    if r < 0 or s < 0 or r + s < 1:
        raise DomainError(f"need r, s ≥ 0 with r + s ≥ 1, got ({r}, {s})")
    if s == 0:
        return BasicPrismAngles(mu=math.pi / (2 * r), nu=None)
    if r == 0:
        return BasicPrismAngles(mu=None, nu=math.pi / (2 * s))

    def nu_of(mu: float) -> float:
        return (HALF_PI - r * mu) / s

    def residual(mu: float) -> float:
        return cosh_rho("C1", mu) - cosh_rho("C2", nu_of(mu))

    upper = HALF_PI / r
    lo, hi = upper * 1e-12, upper * (1.0 - 1e-12)
    f_lo, f_hi = residual(lo), residual(hi)
    if f_lo * f_hi > 0:
        raise NoSolution(
            f"no sign change for (r, s) = ({r}, {s}) on [{lo:.3g}, {hi:.3g}]"
        )
    mu = optimize.brentq(residual, lo, hi, xtol=xtol, rtol=4 * np.finfo(float).eps)
    logger.debug("basic prism (%d, %d): μ = %.12f", r, s, mu)
    return BasicPrismAngles(mu=mu, nu=nu_of(mu))


def basic_prism_volume(r: int, s: int) -> float:
    """r copies of C_1(μ) and s copies of C_2(ν) with the solved angles."""
    angles = solve_basic_prism(r, s)
    total = 0.0
    if angles.mu is not None:
        total += r * c1_volume(angles.mu)
    if angles.nu is not None:
        total += s * c2_volume(angles.nu)
    return total


def gram_entries(mu: float) -> Tuple[float, float, float, float]:
    """(x_1, x_2, x_3, m) solving the Gram conditions for C_1(μ)."""
    mu = _check_mu(mu, allow_zero=False)
    x1 = -cosh_rho("C1", mu)
    m = -math.cos(mu)
    s = x1 * x1
    x2 = -math.sqrt((s - 9.0 / 16.0) / (s - 0.75))
    x3 = -math.sqrt((1.0 - m * m) * (s - 0.75) / (s - 1.0))
    return x1, x2, x3, m


def gram_matrix(mu: float) -> np.ndarray:
    """The 6×6 Gram matrix of the face normals of C_1(μ)."""
    x1, x2, x3, m = gram_entries(mu)
    return np.array(
        [
            [1.0, x1, 0.0, -0.5, 0.0, 0.0],
            [x1, 1.0, 0.0, 0.0, -0.5, 0.0],
            [0.0, 0.0, 1.0, 0.0, x2, m],
            [-0.5, 0.0, 0.0, 1.0, 0.0, x3],
            [0.0, -0.5, x2, 0.0, 1.0, 0.0],
            [0.0, 0.0, m, x3, 0.0, 1.0],
        ]
    )


def gram_check(mu: float) -> float:
    """Largest absolute 5×5 principal minor; zero when the Gram conditions hold."""
    gram = gram_matrix(mu)
    residuals = []
    for drop in range(6):
        keep = [i for i in range(6) if i != drop]
        residuals.append(abs(np.linalg.det(gram[np.ix_(keep, keep)])))
    return max(residuals)
