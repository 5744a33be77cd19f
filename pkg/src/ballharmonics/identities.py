"""Variational identities for harmonic maps, checked as numeric residuals.

For a certified harmonic map u and radius r in (0, 1]:

  * inner identity:   (n - 2) E(r) = r total(r) - 2 r normal(r),
  * boundary identity: E(r) = (1/r) integral over the sphere of
    sum_i u^i <x, grad u^i>,
  * minimiser bound (n >= 3, u non-constant): E(1) < 2/(n-2) H(1),

with E, total, normal and H as in :mod:`energetics`.  On the exact
quadrature route the two identities hold with *exactly* zero residual for
rational harmonic maps; the Monte Carlo route reproduces them to sampling
accuracy.  Residuals are normalised by max(|lhs|, |rhs|, E(r)) so that the
n = 2 inner identity (whose lhs vanishes identically) is still meaningfully
scored.

Identity checks refuse maps whose ``certified`` flag is False: the algebra
behind the identities needs the Laplacian to vanish, and this package only
asserts what it has verified.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .energetics import (
    dirichlet_energy_result,
    normal_energy_result,
    surface_dirichlet_result,
    surface_energy_total_result,
)
from .exactmath import PiRational, as_fraction
from .geometry import unit_ball_volume
from .harmonics import HarmonicMap
from .integration import EXACT, IntegralResult, QuadratureSpec, integrate_poly_sphere
from .polynomials import MultiPoly, VectorPoly, radial_pairing

POHOZAEV = "pohozaev"
GREEN = "green"
MINIMISER_BOUND = "minimiser_bound"
C1_BOUND = "c1_bound"


@dataclass(frozen=True)
class ResidualReport:
    """lhs, rhs and scaled residual of one identity instance."""

    identity_name: str
    dimension: int
    radius: float
    lhs: float
    rhs: float
    residual: float
    normalized_residual: float
    margin_ratio: float | None = None
    constant: float | None = None
    map_label: str = ""


def _require_certified(u: HarmonicMap) -> None:
    if not isinstance(u, HarmonicMap):
        raise TypeError(f"expected a HarmonicMap, got {type(u).__name__}")
    if not u.certified:
        raise ValueError(
            f"map {u.label!r} is not certified harmonic; identities are only "
            f"checked for maps whose Laplacian has been verified to vanish"
        )


@lru_cache(maxsize=512)
def _flux_poly_of(body: VectorPoly) -> MultiPoly:
    """sum_i u^i <x, grad u^i>, cached since it is queried per radius."""
    acc: dict = {}
    for comp, pairing in zip(body, radial_pairing(body)):
        for exps, c in (comp * pairing).terms():
            acc[exps] = acc.get(exps, 0) + c
    return MultiPoly(body.dimension, acc)


def _normalized(lhs: IntegralResult, rhs: IntegralResult, scale: IntegralResult) -> tuple[float, float]:
    """(residual, normalized residual); exact when all three carry exact values."""
    if lhs.exact is not None and rhs.exact is not None and scale.exact is not None:
        res = lhs.exact - rhs.exact
        if res.is_zero:
            return 0.0, 0.0
        denom_coeff = max(
            abs(lhs.exact.coeff), abs(rhs.exact.coeff), abs(scale.exact.coeff)
        )
        denom = PiRational(denom_coeff, res.power)
        return float(res), abs(float(res.ratio(denom)))
    res = lhs.value - rhs.value
    denom = max(abs(lhs.value), abs(rhs.value), abs(scale.value))
    return res, (abs(res) / denom if denom > 0.0 else 0.0)


def pohozaev_residual(
    u: HarmonicMap, r=1, spec: QuadratureSpec = EXACT
) -> ResidualReport:
    """Residual of (n - 2) E(r) = r total(r) - 2 r normal(r)."""
    _require_certified(u)
    n = u.dimension
    energy = dirichlet_energy_result(u, r, spec)
    total = surface_energy_total_result(u, r, spec)
    normal = normal_energy_result(u, r, spec)
    rf = float(r)
    if energy.exact is not None and total.exact is not None and normal.exact is not None:
        r_exact = as_fraction(r)
        lhs_e = energy.exact.scaled(n - 2)
        rhs_e = total.exact.scaled(r_exact) - normal.exact.scaled(2 * r_exact)
        lhs = IntegralResult.from_exact(lhs_e)
        rhs = IntegralResult.from_exact(rhs_e)
    else:
        lhs = IntegralResult(
            value=(n - 2) * energy.value,
            log_abs_value=energy.log_abs_value + (math.log(n - 2) if n > 2 else -math.inf),
            standard_error=(n - 2) * energy.standard_error,
            method=energy.method,
            samples=energy.samples,
        )
        rhs_value = rf * total.value - 2.0 * rf * normal.value
        rhs = IntegralResult(
            value=rhs_value,
            log_abs_value=math.log(abs(rhs_value)) if rhs_value else -math.inf,
            standard_error=rf * math.hypot(total.standard_error, 2.0 * normal.standard_error),
            method=total.method,
            samples=total.samples,
        )
    residual, normalized = _normalized(lhs, rhs, energy)
    return ResidualReport(
        identity_name=POHOZAEV,
        dimension=n,
        radius=rf,
        lhs=lhs.value,
        rhs=rhs.value,
        residual=residual,
        normalized_residual=normalized,
        map_label=u.label,
    )


def green_residual(
    u: HarmonicMap, r=1, spec: QuadratureSpec = EXACT
) -> ResidualReport:
    """Residual of E(r) = (1/r) * integral over the sphere of sum_i u^i <x, grad u^i>."""
    _require_certified(u)
    n = u.dimension
    lhs = dirichlet_energy_result(u, r, spec)
    raw = integrate_poly_sphere(_flux_poly_of(u.body), r, spec)
    rf = float(r)
    if raw.exact is not None:
        rhs = IntegralResult.from_exact(raw.exact.scaled(1 / as_fraction(r)))
    else:
        rhs = IntegralResult(
            value=raw.value / rf,
            log_abs_value=raw.log_abs_value - math.log(rf),
            standard_error=raw.standard_error / rf,
            method=raw.method,
            samples=raw.samples,
        )
    residual, normalized = _normalized(lhs, rhs, lhs)
    return ResidualReport(
        identity_name=GREEN,
        dimension=n,
        radius=rf,
        lhs=lhs.value,
        rhs=rhs.value,
        residual=residual,
        normalized_residual=normalized,
        map_label=u.label,
    )


def _bound_report(u: HarmonicMap, spec: QuadratureSpec, name: str) -> ResidualReport:
    _require_certified(u)
    n = u.dimension
    if n < 3:
        raise ValueError(f"the energy bound needs dimension >= 3, got n = {n}")
    energy = dirichlet_energy_result(u, 1, spec)
    tangential = surface_dirichlet_result(u, 1, spec)
    c1 = Fraction(2, n - 2)
    if energy.exact is not None and tangential.exact is not None:
        if energy.exact.is_zero:
            raise ValueError("constant map: the bound compares two zero energies")
        rhs_e = tangential.exact.scaled(c1)
        margin = float(rhs_e.ratio(energy.exact))
        lhs_v, rhs_v = energy.value, float(rhs_e)
        residual, normalized = _normalized(
            energy, IntegralResult.from_exact(rhs_e), energy
        )
    else:
        if energy.value <= 0.0:
            raise ValueError("constant map: the bound compares two zero energies")
        rhs_v = float(c1) * tangential.value
        lhs_v = energy.value
        margin = rhs_v / lhs_v
        residual = lhs_v - rhs_v
        normalized = abs(residual) / max(abs(lhs_v), abs(rhs_v))
    return ResidualReport(
        identity_name=name,
        dimension=n,
        radius=1.0,
        lhs=lhs_v,
        rhs=rhs_v,
        residual=residual,
        normalized_residual=normalized,
        margin_ratio=margin,
        constant=float(c1),
        map_label=u.label,
    )


def minimiser_bound_check(u: HarmonicMap, spec: QuadratureSpec = EXACT) -> ResidualReport:
    """Check E(1) < 2/(n-2) * H(1) for a non-constant certified map, n >= 3.

    ``margin_ratio`` is rhs / lhs and must exceed 1; the caller asserts the
    strictness.  For homogeneous degree-k maps the ratio is exactly
    2 (n + k - 2) / (n - 2).
    """
    return _bound_report(u, spec, MINIMISER_BOUND)


def c1_bound_report(u: HarmonicMap, spec: QuadratureSpec = EXACT) -> ResidualReport:
    """Same inequality viewed as E(1) <= c1 H(1) with c1 = 2/(n-2) reported.

    c1 * n tends to 2 as n grows, which is the O(1/n) sharpening that makes
    high-dimensional energy decay fast; the report carries c1 in
    ``constant`` so callers can track that rate.
    """
    return _bound_report(u, spec, C1_BOUND)


# -- dimension scan of the identity-map quantities ------------------------------


@dataclass(frozen=True)
class VolumeDecayRow:
    """Identity-map energies and the volume bound in one dimension."""

    dimension: int
    log_volume: float
    volume: float
    ball_energy: float  # E(1) = n V_n
    surface_energy: float  # H(1) = n (n - 1) V_n
    log_surface_energy: float
    volume_bound: float  # 2 H(1) / (n (n - 2)) >= V_n
    bound_margin: float  # volume_bound / V_n = 2 (n - 1) / (n - 2)
    running_sup_surface_energy: float


@dataclass(frozen=True)
class VolumeDecayTable:
    rows: tuple[VolumeDecayRow, ...]
    argmax_dimension: int
    max_surface_energy: float
    argmax_is_interior: bool


def volume_decay_chain(n_min: int = 3, n_max: int = 50) -> VolumeDecayTable:
    """Scan n in [n_min, n_max]: identity-map energies, volume bound, running sup.

    Everything is derived from log V_n, so the scan stays meaningful long
    after the plain volumes underflow.  The argmax of the surface energy
    n (n - 1) V_n over the scanned range is reported; it is interior (not at
    either end) whenever the range brackets the peak.
    """
    if not (isinstance(n_min, int) and isinstance(n_max, int)):
        raise ValueError("dimensions must be integers")
    if n_min < 3:
        raise ValueError(f"the volume bound needs n >= 3, got n_min = {n_min}")
    if n_max < n_min:
        raise ValueError(f"empty range [{n_min}, {n_max}]")
    rows = []
    sup_log = -math.inf
    argmax_n, argmax_log = n_min, -math.inf
    for n in range(n_min, n_max + 1):
        bv = unit_ball_volume(n)
        log_surface = math.log(n) + math.log(n - 1) + bv.log_volume
        if log_surface > sup_log:
            sup_log = log_surface
        if log_surface > argmax_log:
            argmax_n, argmax_log = n, log_surface
        log_bound = math.log(2.0) + log_surface - math.log(n) - math.log(n - 2)
        rows.append(
            VolumeDecayRow(
                dimension=n,
                log_volume=bv.log_volume,
                volume=bv.volume,
                ball_energy=_exp_or_inf(math.log(n) + bv.log_volume),
                surface_energy=_exp_or_inf(log_surface),
                log_surface_energy=log_surface,
                volume_bound=_exp_or_inf(log_bound),
                bound_margin=2.0 * (n - 1) / (n - 2),
                running_sup_surface_energy=_exp_or_inf(sup_log),
            )
        )
    return VolumeDecayTable(
        rows=tuple(rows),
        argmax_dimension=argmax_n,
        max_surface_energy=_exp_or_inf(argmax_log),
        argmax_is_interior=(n_min < argmax_n < n_max),
    )


def _exp_or_inf(log_value: float) -> float:
    if log_value == -math.inf:
        return 0.0
    try:
        return math.exp(log_value)
    except OverflowError:
        return math.inf
