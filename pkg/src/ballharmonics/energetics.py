"""Dirichlet energies of polynomial maps on balls and spheres, plus decay fits.

For a map u: R^n -> R^m the quantities are

    E(r)        integral of |grad u|^2 over the ball of radius r,
    total(r)    integral of |grad u|^2 over the sphere of radius r,
    normal(r)   integral of |du/dnu|^2 over that sphere,
    H(r)        total(r) - normal(r), the tangential surface energy.

|du/dnu|^2 on the sphere of radius r equals sum_i <x, grad u^i>^2 / r^2, a
polynomial divided by an exact constant, so every quantity here reduces to
polynomial quadrature and inherits the exact route of :mod:`integration`.
Energies scale quadratically in the map and decay like r^(n + 2k - 2) per
homogeneous degree-k component; the fitting helpers below measure that decay
from log-log samples.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .exactmath import PiRational, as_fraction
from .harmonics import HarmonicMap
from .integration import (
    EXACT,
    EXACT_METHOD,
    IntegralResult,
    QuadratureSpec,
    integrate_poly_ball,
    integrate_poly_sphere,
)
from .polynomials import MultiPoly, VectorPoly, as_vector, grad_norm_sq, radial_pairing


def map_body(u) -> VectorPoly:
    """Accept a HarmonicMap, VectorPoly or scalar MultiPoly."""
    if isinstance(u, HarmonicMap):
        return u.body
    return as_vector(u)


# Energies of one map get queried at several radii and by several identities;
# the squared-gradient and squared-pairing polynomials dominate that cost, so
# they are cached per (hashable) body.
@lru_cache(maxsize=512)
def _grad_norm_sq_of(body: VectorPoly) -> MultiPoly:
    return grad_norm_sq(body)


@lru_cache(maxsize=512)
def _pairing_sq_sum_of(body: VectorPoly) -> MultiPoly:
    acc: dict = {}
    for pairing in radial_pairing(body):
        for exps, c in pairing.square().terms():
            acc[exps] = acc.get(exps, 0) + c
    return MultiPoly(body.dimension, acc)


def _check_radius(r, upper: float = 1.0) -> float:
    rf = float(r)
    if not 0.0 < rf <= upper:
        raise ValueError(f"radius must lie in (0, {upper:g}], got {r!r}")
    return rf


def dirichlet_energy_result(u, r=1, spec: QuadratureSpec = EXACT) -> IntegralResult:
    _check_radius(r)
    return integrate_poly_ball(_grad_norm_sq_of(map_body(u)), r, spec)


def dirichlet_energy(u, r=1, spec: QuadratureSpec = EXACT) -> float:
    """E(r): the Dirichlet energy of u over the ball of radius r <= 1."""
    return dirichlet_energy_result(u, r, spec).value


def surface_energy_total_result(u, r=1, spec: QuadratureSpec = EXACT) -> IntegralResult:
    _check_radius(r)
    return integrate_poly_sphere(_grad_norm_sq_of(map_body(u)), r, spec)


def surface_energy_total(u, r=1, spec: QuadratureSpec = EXACT) -> float:
    """Integral of |grad u|^2 over the sphere of radius r."""
    return surface_energy_total_result(u, r, spec).value


def normal_energy_result(u, r=1, spec: QuadratureSpec = EXACT) -> IntegralResult:
    _check_radius(r)
    body = map_body(u)
    raw = integrate_poly_sphere(_pairing_sq_sum_of(body), r, spec)
    inv_r_sq = as_fraction(r) ** -2
    if raw.exact is not None:
        return IntegralResult.from_exact(raw.exact.scaled(inv_r_sq))
    scale = float(inv_r_sq)
    return IntegralResult(
        value=raw.value * scale,
        log_abs_value=raw.log_abs_value + math.log(scale),
        standard_error=raw.standard_error * scale,
        method=raw.method,
        samples=raw.samples,
    )


def normal_energy(u, r=1, spec: QuadratureSpec = EXACT) -> float:
    """Integral of the squared normal derivative over the sphere of radius r."""
    return normal_energy_result(u, r, spec).value


def surface_dirichlet_result(u, r=1, spec: QuadratureSpec = EXACT) -> IntegralResult:
    total = surface_energy_total_result(u, r, spec)
    normal = normal_energy_result(u, r, spec)
    if total.exact is not None and normal.exact is not None:
        exact = total.exact - normal.exact
        # total - normal is the tangential part, non-negative pointwise
        assert exact.coeff >= 0
        return IntegralResult.from_exact(exact)
    value = total.value - normal.value
    if value < -1e-12 * max(abs(total.value), 1.0):
        raise ArithmeticError(
            f"tangential surface energy came out negative ({value!r}); "
            f"Monte Carlo error exceeded the sanity floor"
        )
    value = max(value, 0.0)
    stderr = math.hypot(total.standard_error, normal.standard_error)
    return IntegralResult(
        value=value,
        log_abs_value=math.log(value) if value > 0 else -math.inf,
        standard_error=stderr,
        method=total.method,
        samples=total.samples,
    )


def surface_dirichlet(u, r=1, spec: QuadratureSpec = EXACT) -> float:
    """H(r): the tangential surface energy, total minus normal."""
    return surface_dirichlet_result(u, r, spec).value


# -- profiles and decay fits ----------------------------------------------------


@dataclass(frozen=True)
class EnergyProfile:
    """E(r) sampled on a strictly increasing radius grid in (0, 1]."""

    map_label: str
    dimension: int
    samples: tuple[tuple[float, float, float], ...]  # (r, E, log E)
    method: QuadratureSpec

    @property
    def radii(self) -> tuple[float, ...]:
        return tuple(s[0] for s in self.samples)

    @property
    def energies(self) -> tuple[float, ...]:
        return tuple(s[1] for s in self.samples)


@dataclass(frozen=True)
class DecayFit:
    """Least-squares fit of log E = log_amplitude + exponent * log r."""

    exponent: float
    log_amplitude: float
    max_abs_residual: float
    points_used: int


@dataclass(frozen=True)
class DecayBoundReport:
    """Outcome of checking E(r) <= C (r/R)^beta E(R) on all radius pairs."""

    beta: float
    constant: float
    holds: bool
    worst_margin: float
    worst_pair: tuple[float, float]
    pairs_checked: int


def _check_radii(radii) -> tuple[float, ...]:
    rs = tuple(float(r) for r in radii)
    if not rs:
        raise ValueError("need at least one radius")
    if any(not 0.0 < r <= 1.0 for r in rs):
        raise ValueError(f"radii must lie in (0, 1], got {rs}")
    if any(b <= a for a, b in zip(rs, rs[1:])):
        raise ValueError(f"radii must be strictly increasing, got {rs}")
    return rs


def energy_profile(u, radii, spec: QuadratureSpec = EXACT) -> EnergyProfile:
    """Sample the Dirichlet energy of u on the given radius grid."""
    rs = _check_radii(radii)
    body = map_body(u)
    label = u.label if isinstance(u, HarmonicMap) else ""
    samples = []
    for r in rs:
        res = dirichlet_energy_result(body, r, spec)
        samples.append((r, res.value, res.log_abs_value))
    return EnergyProfile(
        map_label=label,
        dimension=body.dimension,
        samples=tuple(samples),
        method=spec,
    )


def fit_decay_exponent(profile: EnergyProfile) -> DecayFit:
    """Fit the decay exponent from the profile's positive-energy samples."""
    pts = [(math.log(r), log_e) for r, e, log_e in profile.samples if e > 0.0]
    dropped = len(profile.samples) - len(pts)
    if dropped:
        warnings.warn(
            f"decay fit dropped {dropped} non-positive energy sample(s)",
            stacklevel=2,
        )
    if len(pts) < 2:
        raise ValueError("decay fit needs at least two positive energy samples")
    xs = [p[0] for p in pts]
    ys = [p[1] for p in pts]
    x_mean = math.fsum(xs) / len(xs)
    y_mean = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - x_mean) ** 2 for x in xs)
    if sxx == 0.0:
        raise ValueError("decay fit needs at least two distinct radii")
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    max_resid = max(abs(y - (intercept + slope * x)) for x, y in zip(xs, ys))
    return DecayFit(
        exponent=slope,
        log_amplitude=intercept,
        max_abs_residual=max_resid,
        points_used=len(pts),
    )


def verify_decay_bound(
    u, beta: float, constant: float, radii, spec: QuadratureSpec = EXACT
) -> DecayBoundReport:
    """Check E(r) <= constant * (r/R)^beta * E(R) over all pairs r < R.

    The margin of a pair is E(r) / (constant (r/R)^beta E(R)); the bound
    holds when every margin is <= 1 up to 1e-12 relative slack.  Pairs with
    E(R) = 0 hold vacuously iff E(r) = 0 too (energy is monotone in r).
    """
    if not constant > 0:
        raise ValueError(f"constant must be positive, got {constant!r}")
    rs = _check_radii(radii)
    if len(rs) < 2:
        raise ValueError("need at least two radii to compare")
    body = map_body(u)
    energies = [dirichlet_energy(body, r, spec) for r in rs]
    worst_margin = 0.0
    worst_pair = (rs[0], rs[-1])
    pairs = 0
    for i in range(len(rs)):
        for j in range(i + 1, len(rs)):
            pairs += 1
            r_small, r_big = rs[i], rs[j]
            e_small, e_big = energies[i], energies[j]
            if e_big <= 0.0:
                margin = 0.0 if e_small <= 0.0 else math.inf
            else:
                margin = e_small / (constant * (r_small / r_big) ** beta * e_big)
            if margin > worst_margin:
                worst_margin = margin
                worst_pair = (r_small, r_big)
    return DecayBoundReport(
        beta=beta,
        constant=constant,
        holds=worst_margin <= 1.0 + 1e-12,
        worst_margin=worst_margin,
        worst_pair=worst_pair,
        pairs_checked=pairs,
    )


# -- scalar summaries -----------------------------------------------------------


def concentration_fraction(u, r, spec: QuadratureSpec = EXACT) -> float:
    """Fraction of u's unit-ball Dirichlet energy outside the ball of radius r."""
    rf = float(r)
    if not 0.0 < rf < 1.0:
        raise ValueError(f"inner radius must lie strictly in (0, 1), got {r!r}")
    body = map_body(u)
    if spec.method == EXACT_METHOD:
        inner = dirichlet_energy_result(body, r, spec).exact
        outer = dirichlet_energy_result(body, 1, spec).exact
        if outer.is_zero:
            raise ValueError("map has zero Dirichlet energy; fraction undefined")
        return float(Fraction(1) - inner.ratio(outer))
    inner_v = dirichlet_energy(body, rf, spec)
    outer_v = dirichlet_energy(body, 1.0, spec)
    if outer_v <= 0.0:
        raise ValueError("map has zero Dirichlet energy; fraction undefined")
    return 1.0 - inner_v / outer_v


def half_radius_theta(u, big_radius=1, spec: QuadratureSpec = EXACT) -> float:
    """The contraction factor E(R/2) / E(R) at R = big_radius."""
    rf = _check_radius(big_radius)
    body = map_body(u)
    if spec.method == EXACT_METHOD:
        half = dirichlet_energy_result(body, as_fraction(big_radius) / 2, spec).exact
        full = dirichlet_energy_result(body, big_radius, spec).exact
        if full.is_zero:
            raise ValueError("map has zero Dirichlet energy; contraction undefined")
        return float(half.ratio(full))
    half_v = dirichlet_energy(body, rf / 2.0, spec)
    full_v = dirichlet_energy(body, rf, spec)
    if full_v <= 0.0:
        raise ValueError("map has zero Dirichlet energy; contraction undefined")
    return half_v / full_v
