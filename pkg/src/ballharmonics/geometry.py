"""Unit-ball volumes, sphere areas and thin-shell mass in any dimension.

All quantities are computed in log space first, so dimensions in the
hundreds neither overflow nor lose the leading digits; plain float values
are derived from the logs (0.0 or inf when out of float range).  Exact
rational-times-pi-power companions are available for the dimensions where
downstream identities want exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .exactmath import PiRational, gamma_half

_LOG_PI = math.log(math.pi)


@dataclass(frozen=True)
class BallVolume:
    """Volume of the unit ball B^n; ``log_volume`` is authoritative."""

    dimension: int
    log_volume: float
    volume: float


@dataclass(frozen=True)
class SphereArea:
    """Surface measure of the sphere of radius ``radius`` in R^n."""

    dimension: int
    radius: float
    log_area: float
    area: float


@dataclass(frozen=True)
class ShellSpec:
    """The shell {inner_radius <= |x| <= 1} inside the unit ball."""

    dimension: int
    inner_radius: float

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dimension!r}")
        if not 0.0 <= self.inner_radius <= 1.0:
            raise ValueError(
                f"inner_radius must lie in [0, 1], got {self.inner_radius!r}"
            )


def _safe_exp(log_value: float) -> float:
    if log_value == -math.inf:
        return 0.0
    try:
        return math.exp(log_value)
    except OverflowError:
        return math.inf


def unit_ball_volume(n: int) -> BallVolume:
    """V_n = pi^(n/2) / Gamma(n/2 + 1); n = 0 gives the degenerate value 1."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer, got {n!r}")
    log_v = 0.5 * n * _LOG_PI - math.lgamma(0.5 * n + 1.0)
    return BallVolume(dimension=n, log_volume=log_v, volume=_safe_exp(log_v))


def unit_ball_volume_exact(n: int) -> PiRational:
    """V_n as an exact Fraction times pi**(n // 2); n = 0 gives 1."""
    if not isinstance(n, int) or n < 0:
        raise ValueError(f"dimension must be a non-negative integer, got {n!r}")
    # V_n = pi^{n/2} / Gamma(n/2 + 1); the gamma eats one sqrt(pi) iff n is
    # odd, so the net power is the integer n // 2 for both parities
    rat, halfpi = gamma_half(n + 2)
    assert halfpi == n % 2
    return PiRational(Fraction(1) / rat, n // 2)


def sphere_area(n: int, radius: float = 1.0) -> SphereArea:
    """Surface measure of {|x| = radius} in R^n; n = 1 gives 2 (two points)."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not radius > 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    # area = n * V_n * radius^(n-1)
    log_a = math.log(n) + unit_ball_volume(n).log_volume + (n - 1) * math.log(radius)
    return SphereArea(dimension=n, radius=radius, log_area=log_a, area=_safe_exp(log_a))


def sphere_area_exact(n: int, radius=1) -> PiRational:
    """Exact surface measure for a rational (or binary-float) radius."""
    r = Fraction(radius)
    if r <= 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    return unit_ball_volume_exact(n).scaled(n * r ** (n - 1))


def volume_argmax(n_max: int) -> int:
    """The integer n in [1, n_max] maximising V_n (ties toward smaller n)."""
    if not isinstance(n_max, int) or n_max < 5:
        raise ValueError(f"n_max must be an integer >= 5, got {n_max!r}")
    best_n, best_log = 1, unit_ball_volume(1).log_volume
    for n in range(2, n_max + 1):
        log_v = unit_ball_volume(n).log_volume
        if log_v > best_log:
            best_n, best_log = n, log_v
    return best_n


def shell_volume_fraction(spec: ShellSpec) -> float:
    """Fraction of the unit ball's volume in the shell {r <= |x| <= 1}.

    Equals 1 - r^n, computed as -expm1(n log r) so that values
    exponentially close to 1 keep full relative accuracy.
    """
    r = spec.inner_radius
    if r == 0.0:
        return 1.0
    if r == 1.0:
        return 0.0
    return -math.expm1(spec.dimension * math.log(r))


def shell_width_for_mass(n: int, mass: float) -> float:
    """Width w with the shell {1 - w <= |x| <= 1} holding the given mass.

    Solves 1 - (1-w)^n = mass for w; evaluated as -expm1(log1p(-mass)/n),
    stable for the small widths that appear when n is large (w ~ mass/n).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not 0.0 < mass < 1.0:
        raise ValueError(f"mass must lie strictly between 0 and 1, got {mass!r}")
    return -math.expm1(math.log1p(-mass) / n)
