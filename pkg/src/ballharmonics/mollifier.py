"""Grid lab for mollification: mean-value checks and gradient estimates.

The smoothing kernel is the standard bump J(x) = c_n exp(-1/(1 - |x|^2)) on
|x| < 1 (zero outside), normalised so that its integral over R^n is 1, and
its rescaling J_delta(x) = delta^(-n) J(x/delta) supported in the closed
delta-ball.  Convolving a harmonic function with J_delta reproduces the
function wherever the delta-ball fits inside the domain; convolving a
non-harmonic function leaves a defect proportional to the kernel's second
moment.  Both facts are checked on regular grids over [-1, 1]^n.

Grids are dimension <= 3 only (storage is h^(-n)); spacings are expected to
be dyadic so node coordinates are exact binary floats reproducible from
index arithmetic.  Convolution uses scipy's FFT route and is cross-checked
against direct summation (see :func:`direct_mollify_at`), and smoothed
fields carry a validity mask instead of extrapolating where the kernel
would poke outside the sampled square.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import numpy as np
from scipy.integrate import quad
from scipy.signal import fftconvolve

from .energetics import map_body
from .geometry import sphere_area
from .harmonics import HarmonicMap
from .integration import integrate_poly_ball
from .polynomials import MultiPoly, grad_norm_sq

GRID_DIMENSION_CAP = 3

STANDARD_BUMP = "standard_bump"


def _bump_radial(t: np.ndarray) -> np.ndarray:
    """exp(-1/(1-t^2)) on t < 1, zero outside; vectorised and overflow-safe."""
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1.0
    out = np.zeros(t.shape)
    ts = t[inside]
    out[inside] = np.exp(-1.0 / (1.0 - ts * ts))
    return out


def _bump_radial_slope(t: np.ndarray) -> np.ndarray:
    """d/dt exp(-1/(1-t^2)) = exp(-1/(1-t^2)) * (-2t / (1-t^2)^2)."""
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1.0
    out = np.zeros(t.shape)
    ts = t[inside]
    one_m = 1.0 - ts * ts
    out[inside] = np.exp(-1.0 / one_m) * (-2.0 * ts / (one_m * one_m))
    return out


@lru_cache(maxsize=8)
def _bump_normalization(n: int) -> float:
    """c_n with integral of c_n exp(-1/(1-|x|^2)) over R^n equal to 1."""
    radial, err = quad(
        lambda t: t ** (n - 1) * math.exp(-1.0 / (1.0 - t * t)),
        0.0,
        1.0,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    assert err < 1e-10
    return 1.0 / (sphere_area(n, 1.0).area * radial)


@lru_cache(maxsize=8)
def _bump_second_moment(n: int) -> float:
    """Integral of |y|^2 J(y) dy over the unit profile (scale by delta^2)."""
    radial, err = quad(
        lambda t: t ** (n + 1) * math.exp(-1.0 / (1.0 - t * t)),
        0.0,
        1.0,
        epsabs=1e-13,
        epsrel=1e-13,
    )
    assert err < 1e-10
    return _bump_normalization(n) * sphere_area(n, 1.0).area * radial


@dataclass(frozen=True)
class MollifierSpec:
    """The kernel J_delta in a given dimension.

    ``normalization`` is the unit-profile constant c_n; leave it None to have
    it computed by radial quadrature (tolerance 1e-13, well under the 1e-10
    budget).
    """

    dimension: int
    delta: float
    profile: str = STANDARD_BUMP
    normalization: float | None = None

    def __post_init__(self):
        if not isinstance(self.dimension, int) or self.dimension < 1:
            raise ValueError(f"dimension must be a positive integer, got {self.dimension!r}")
        if self.dimension > GRID_DIMENSION_CAP:
            raise ValueError(
                f"grid storage scales like h^-n; dimension {self.dimension} exceeds "
                f"the cap {GRID_DIMENSION_CAP}"
            )
        if not 0.0 < self.delta <= 0.5:
            raise ValueError(f"delta must lie in (0, 1/2], got {self.delta!r}")
        if self.profile != STANDARD_BUMP:
            raise ValueError(f"unknown profile {self.profile!r}")
        if self.normalization is None:
            object.__setattr__(self, "normalization", _bump_normalization(self.dimension))

    def value_at_radii(self, radii: np.ndarray) -> np.ndarray:
        """J_delta as a function of |x|."""
        scale = self.normalization * self.delta ** (-self.dimension)
        return scale * _bump_radial(np.asarray(radii) / self.delta)

    def gradient_magnitude_at_radii(self, radii: np.ndarray) -> np.ndarray:
        """|grad J_delta| as a function of |x| (radial profile, so exact)."""
        scale = self.normalization * self.delta ** (-self.dimension - 1)
        return scale * np.abs(_bump_radial_slope(np.asarray(radii) / self.delta))

    def second_moment(self) -> float:
        """Integral of |x|^2 J_delta(x) dx = delta^2 * (unit-profile moment)."""
        return self.delta**2 * _bump_second_moment(self.dimension)


@dataclass(frozen=True, eq=False)
class GridField:
    """Values on a regular grid; node d-coordinate = origin[d] + i * spacing."""

    dimension: int
    spacing: float
    origin: tuple[float, ...]
    values: np.ndarray
    valid: np.ndarray | None = None

    def axis_coordinates(self, axis: int) -> np.ndarray:
        count = self.values.shape[axis]
        return self.origin[axis] + self.spacing * np.arange(count)

    def index_of(self, point: Sequence[float]) -> tuple[int, ...]:
        """Nearest node index; raises if the point leaves the grid."""
        if len(point) != self.dimension:
            raise ValueError(f"point has {len(point)} coordinates, expected {self.dimension}")
        idx = []
        for d, x in enumerate(point):
            i = round((float(x) - self.origin[d]) / self.spacing)
            if not 0 <= i < self.values.shape[d]:
                raise ValueError(f"point {tuple(point)} falls outside the sampled grid")
            idx.append(i)
        return tuple(idx)

    def coordinate_of(self, index: Sequence[int]) -> tuple[float, ...]:
        return tuple(
            self.origin[d] + self.spacing * int(i) for d, i in enumerate(index)
        )


def _check_grid_dimension(n: int) -> None:
    if n > GRID_DIMENSION_CAP:
        raise ValueError(
            f"grid storage scales like h^-n; dimension {n} exceeds the cap "
            f"{GRID_DIMENSION_CAP}"
        )


def _radius_mesh(axes: list[np.ndarray]) -> np.ndarray:
    n = len(axes)
    total = np.zeros((1,) * n)
    for d, a in enumerate(axes):
        shape = [1] * n
        shape[d] = len(a)
        total = total + (a * a).reshape(shape)
    return np.sqrt(total)


def poly_on_grid(p: MultiPoly, axes: list[np.ndarray]) -> np.ndarray:
    """Evaluate p on the tensor grid of the given axis coordinates."""
    if p.dimension != len(axes):
        raise ValueError(f"polynomial has dimension {p.dimension}, got {len(axes)} axes")
    n = len(axes)
    shape = tuple(len(a) for a in axes)
    total = np.zeros((1,) * n)
    for exps, c in p.terms():
        contrib = np.asarray(float(c))
        for d, e in enumerate(exps):
            if e:
                sh = [1] * n
                sh[d] = len(axes[d])
                contrib = contrib * (axes[d] ** e).reshape(sh)
        total = total + contrib
    return np.broadcast_to(total, shape).copy() if total.shape != shape else total


def sample_scalar_on_grid(p: MultiPoly, spacing: float, extent: float = 1.0) -> GridField:
    """Sample p over [-extent, extent]^n at the given (dyadic) spacing."""
    _check_grid_dimension(p.dimension)
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing!r}")
    half = round(extent / spacing)
    if abs(half * spacing - extent) > 1e-12:
        raise ValueError(
            f"extent {extent!r} must be an integer multiple of spacing {spacing!r}"
        )
    axis = (np.arange(2 * half + 1) - half) * spacing
    axes = [axis] * p.dimension
    return GridField(
        dimension=p.dimension,
        spacing=spacing,
        origin=(float(axis[0]),) * p.dimension,
        values=poly_on_grid(p, axes),
    )


@dataclass(frozen=True)
class MollifierBuildReport:
    """Normalization bookkeeping from discretising the kernel."""

    continuum_normalization: float
    grid_integral: float
    deviation: float
    center_value: float
    spacing: float


def kernel_field(spec: MollifierSpec, spacing: float) -> GridField:
    """J_delta sampled on its support grid, offsets -K..K per axis."""
    if not spacing > 0:
        raise ValueError(f"spacing must be positive, got {spacing!r}")
    half = int(math.floor(spec.delta / spacing + 1e-12))
    if half < 1:
        raise ValueError(
            f"spacing {spacing!r} cannot resolve a kernel of radius {spec.delta!r}"
        )
    axis = (np.arange(2 * half + 1) - half) * spacing
    axes = [axis] * spec.dimension
    values = spec.value_at_radii(_radius_mesh(axes))
    return GridField(
        dimension=spec.dimension,
        spacing=spacing,
        origin=(float(axis[0]),) * spec.dimension,
        values=values,
    )


def build_mollifier(spec: MollifierSpec, spacing: float) -> tuple[GridField, MollifierBuildReport]:
    """Discretise J_delta and report how well the grid integral hits 1."""
    field = kernel_field(spec, spacing)
    grid_integral = float(np.sum(field.values)) * spacing**spec.dimension
    center = field.index_of((0.0,) * spec.dimension)
    return field, MollifierBuildReport(
        continuum_normalization=spec.normalization,
        grid_integral=grid_integral,
        deviation=abs(grid_integral - 1.0),
        center_value=float(field.values[center]),
        spacing=spacing,
    )


def mollify(field: GridField, spec: MollifierSpec) -> GridField:
    """J_delta convolved with the field; undefined margins are masked.

    The kernel is symmetric, so FFT convolution and the defining sum
    (J_delta * u)(x) = sum_j J_delta(x - y_j) u(y_j) h^n agree; scipy's
    ``fftconvolve`` keeps them within 1e-12 for desk-scale grids.
    """
    if field.dimension != spec.dimension:
        raise ValueError(
            f"field dimension {field.dimension} != kernel dimension {spec.dimension}"
        )
    if field.valid is not None:
        raise ValueError("refusing to mollify a field that is already masked")
    kern = kernel_field(spec, field.spacing)
    weights = kern.values * field.spacing**field.dimension
    smoothed = fftconvolve(field.values, weights, mode="same")
    half = (kern.values.shape[0] - 1) // 2
    valid = np.zeros(field.values.shape, dtype=bool)
    interior = tuple(slice(half, s - half) for s in field.values.shape)
    valid[interior] = True
    smoothed = np.where(valid, smoothed, np.nan)
    return GridField(
        dimension=field.dimension,
        spacing=field.spacing,
        origin=field.origin,
        values=smoothed,
        valid=valid,
    )


def direct_mollify_at(field: GridField, spec: MollifierSpec, index: Sequence[int]) -> float:
    """The convolution sum at one node, by direct summation (FFT oracle)."""
    kern = kernel_field(spec, field.spacing)
    half = (kern.values.shape[0] - 1) // 2
    slices = []
    for d, i in enumerate(index):
        i = int(i)
        if not half <= i < field.values.shape[d] - half:
            raise ValueError(f"index {tuple(index)} is inside the masked margin")
        slices.append(slice(i - half, i + half + 1))
    block = field.values[tuple(slices)]
    # symmetric kernel: correlation equals convolution
    return float(np.sum(block * kern.values)) * field.spacing**field.dimension


# -- mean-value checks ---------------------------------------------------------


@dataclass(frozen=True)
class MeanValueReport:
    """Sup-norm defect of u - J_delta * u at the requested (snapped) points.

    ``values[j][i]`` and ``mollified[j][i]`` are the i-th component of u and
    of J_delta * u at the j-th snapped point; ``errors[j]`` is the max over
    components of their absolute difference.
    """

    delta: float
    spacing: float
    points: tuple[tuple[float, ...], ...]
    values: tuple[tuple[float, ...], ...]
    mollified: tuple[tuple[float, ...], ...]
    errors: tuple[float, ...]
    sup_error: float
    not_a_counterexample: bool


def _scalar_components(u) -> tuple[list[MultiPoly], bool, int]:
    """Components, harmonic-certainty, dimension for a map-like input."""
    if isinstance(u, HarmonicMap):
        return list(u.body), u.certified, u.dimension
    body = map_body(u)
    certified = all(comp.is_harmonic() for comp in body)
    return list(body), certified, body.dimension


def mean_value_check(
    u, spec: MollifierSpec, points: Sequence[Sequence[float]], spacing: float = 1 / 256
) -> MeanValueReport:
    """sup over points and components of |(J_delta * u)(x) - u(x)|.

    Points must lie in the closed ball of radius 1 - delta (so the kernel
    stays inside the sampled square); each is snapped to its nearest grid
    node, and the snapped coordinates are what the report carries.  A
    non-harmonic input is *not* an error: the defect is computed and the
    report is flagged ``not_a_counterexample`` because a nonzero defect for
    a non-harmonic function contradicts nothing.
    """
    comps, certified, n = _scalar_components(u)
    _check_grid_dimension(n)
    if spec.dimension != n:
        raise ValueError(f"kernel dimension {spec.dimension} != map dimension {n}")
    if not points:
        raise ValueError("need at least one evaluation point")
    budget = 1.0 - spec.delta + 1e-9
    for pt in points:
        if math.hypot(*[float(x) for x in pt]) > budget:
            raise ValueError(
                f"point {tuple(pt)} leaves the ball of radius 1 - delta = "
                f"{1.0 - spec.delta:g} where the convolution identity applies"
            )
    snapped: list[tuple[float, ...]] = []
    values = [[0.0] * len(comps) for _ in points]
    mollified = [[0.0] * len(comps) for _ in points]
    errors = [0.0] * len(points)
    for comp_index, comp in enumerate(comps):
        field = sample_scalar_on_grid(comp, spacing, extent=1.0)
        smoothed = mollify(field, spec)
        for j, pt in enumerate(points):
            idx = field.index_of(pt)
            node = field.coordinate_of(idx)
            if not smoothed.valid[idx]:
                raise ValueError(
                    f"point {tuple(pt)} is inside the masked margin at spacing {spacing!r}"
                )
            exact = float(comp.evaluate(node))
            approx = float(smoothed.values[idx])
            if comp_index == 0:
                snapped.append(node)
            values[j][comp_index] = exact
            mollified[j][comp_index] = approx
            errors[j] = max(errors[j], abs(approx - exact))
    return MeanValueReport(
        delta=spec.delta,
        spacing=spacing,
        points=tuple(snapped),
        values=tuple(tuple(row) for row in values),
        mollified=tuple(tuple(row) for row in mollified),
        errors=tuple(errors),
        sup_error=max(errors),
        not_a_counterexample=not certified,
    )


@dataclass(frozen=True)
class MeanValueConvergence:
    """Defect sup-errors across spacings and the measured orders between them."""

    spacings: tuple[float, ...]
    sup_errors: tuple[float, ...]
    orders: tuple[float, ...]


def mean_value_convergence(
    u, spec: MollifierSpec, points: Sequence[Sequence[float]], spacings: Sequence[float]
) -> MeanValueConvergence:
    """Measure how the mean-value defect decays as the grid refines.

    ``orders[i]`` is log(e_i / e_{i+1}) / log(h_i / h_{i+1}).  The defect of
    the smooth bump decays faster than any fixed power, so on fine grids it
    reaches roundoff and the measured order collapses; pick spacings coarse
    enough that the defect stays above ~1e-12.
    """
    hs = tuple(float(h) for h in spacings)
    if len(hs) < 2 or any(b >= a for a, b in zip(hs, hs[1:])):
        raise ValueError("spacings must be strictly decreasing, at least two")
    sups = tuple(
        mean_value_check(u, spec, points, spacing=h).sup_error for h in hs
    )
    orders = []
    for (h1, e1), (h2, e2) in zip(zip(hs, sups), zip(hs[1:], sups[1:])):
        if e1 <= 0.0 or e2 <= 0.0:
            orders.append(math.inf)
        else:
            orders.append(math.log(e1 / e2) / math.log(h1 / h2))
    return MeanValueConvergence(spacings=hs, sup_errors=sups, orders=tuple(orders))


# -- gradient estimates --------------------------------------------------------


@dataclass(frozen=True)
class GradientRatioReport:
    """||grad u||_p over the half ball against ||u||_2 over the unit ball."""

    p: float
    ratio: float
    numerator: float
    denominator: float
    error_estimate: float  # 0 on the exact route


def _l2_norm_unit_ball(comps: list[MultiPoly]) -> float:
    n = comps[0].dimension
    sq = MultiPoly(n)
    for comp in comps:
        sq = sq + comp.square()
    return math.sqrt(integrate_poly_ball(sq, 1).value)


def _grad_p_norm_grid(comps: list[MultiPoly], p: float, spacing: float) -> float:
    n = comps[0].dimension
    _check_grid_dimension(n)
    half = round(0.5 / spacing)
    if abs(half * spacing - 0.5) > 1e-12:
        raise ValueError(f"spacing {spacing!r} must divide the half-ball radius 0.5")
    axis = (np.arange(2 * half + 1) - half) * spacing
    axes = [axis] * n
    gnsq = np.zeros((1,) * n)
    for comp in comps:
        for d in range(n):
            part = poly_on_grid(comp.partial_derivative(d), axes)
            gnsq = gnsq + part * part
    inside = _radius_mesh(axes) <= 0.5 + 1e-12
    total = float(np.sum(np.where(inside, gnsq ** (p / 2.0), 0.0))) * spacing**n
    return total ** (1.0 / p)


def gradient_estimate_report(
    u, p: float = 4, spacing: float = 1 / 128
) -> GradientRatioReport:
    """||grad u||_{L^p(half ball)} / ||u||_{L^2(unit ball)} with an error estimate.

    Even integer p: |grad u|^p is a polynomial, both norms are exact, and the
    error estimate is 0.  Other p >= 1: the numerator is a masked Riemann sum
    at ``spacing`` (dimension <= 3), and the error estimate is the difference
    against the half-spacing refinement.
    """
    comps, _, n = _scalar_components(u)
    if all(c.is_zero for c in comps):
        raise ValueError("zero map: the gradient-to-norm ratio is undefined")
    if not p >= 1:
        raise ValueError(f"p must be >= 1, got {p!r}")
    denominator = _l2_norm_unit_ball(comps)
    if isinstance(p, int) and p % 2 == 0:
        gnsq = grad_norm_sq(map_body(u))
        numerator = integrate_poly_ball(gnsq ** (p // 2), Fraction(1, 2)).value ** (1.0 / p)
        return GradientRatioReport(
            p=float(p),
            ratio=numerator / denominator,
            numerator=numerator,
            denominator=denominator,
            error_estimate=0.0,
        )
    coarse = _grad_p_norm_grid(comps, float(p), spacing)
    fine = _grad_p_norm_grid(comps, float(p), spacing / 2.0)
    return GradientRatioReport(
        p=float(p),
        ratio=fine / denominator,
        numerator=fine,
        denominator=denominator,
        error_estimate=abs(fine - coarse) / denominator,
    )


def gradient_estimate_ratio(u, p: float = 4, spacing: float = 1 / 128) -> float:
    """The ratio alone; see :func:`gradient_estimate_report`."""
    return gradient_estimate_report(u, p, spacing).ratio


# -- kernel gradient scaling ----------------------------------------------------


@dataclass(frozen=True)
class GradientScalingFit:
    """Least-squares exponent of ||grad J_delta||_q against delta."""

    dimension: int
    q: float
    exponent: float
    reference_exponent: float  # n/q - n - 1 from dimensional analysis
    log_intercept: float
    deltas: tuple[float, ...]
    norms: tuple[float, ...]
    max_fit_residual: float


def _gradient_q_norm(spec: MollifierSpec, q: float, spacing: float) -> float:
    half = int(math.floor(spec.delta / spacing + 1e-12))
    axis = (np.arange(2 * half + 1) - half) * spacing
    axes = [axis] * spec.dimension
    mags = spec.gradient_magnitude_at_radii(_radius_mesh(axes))
    total = float(np.sum(mags**q)) * spacing**spec.dimension
    return total ** (1.0 / q)


def mollifier_gradient_scaling(
    q: float,
    spec: MollifierSpec,
    deltas: Sequence[float] | None = None,
    nodes_per_delta: int = 64,
) -> GradientScalingFit:
    """Fit log ||grad J_delta||_q against log delta across a delta grid.

    Each delta gets its own grid with spacing delta / nodes_per_delta, so
    the discretisation is scale-covariant and the fitted exponent measures
    the scaling law rather than resolution artifacts.  Dimensional analysis
    gives n/q - n - 1 (equal to -1 exactly when q = 1); the fit is reported
    against that reference, not asserted beyond it.
    """
    if not q >= 1:
        raise ValueError(f"q must be >= 1, got {q!r}")
    if deltas is None:
        deltas = (0.5, 0.25, 0.125, 0.0625)
    ds = tuple(float(d) for d in deltas)
    if len(ds) < 2:
        raise ValueError("need at least two deltas to fit an exponent")
    if any(not 0.0 < d <= 0.5 for d in ds):
        raise ValueError(f"deltas must lie in (0, 1/2], got {ds}")
    if nodes_per_delta < 8:
        raise ValueError("nodes_per_delta below 8 cannot resolve the kernel")
    norms = []
    for d in ds:
        per_delta = MollifierSpec(
            dimension=spec.dimension,
            delta=d,
            profile=spec.profile,
            normalization=spec.normalization,
        )
        norms.append(_gradient_q_norm(per_delta, q, d / nodes_per_delta))
    xs = [math.log(d) for d in ds]
    ys = [math.log(v) for v in norms]
    x_mean = math.fsum(xs) / len(xs)
    y_mean = math.fsum(ys) / len(ys)
    sxx = math.fsum((x - x_mean) ** 2 for x in xs)
    sxy = math.fsum((x - x_mean) * (y - y_mean) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = y_mean - slope * x_mean
    resid = max(abs(y - (intercept + slope * x)) for x, y in zip(xs, ys))
    n = spec.dimension
    return GradientScalingFit(
        dimension=n,
        q=float(q),
        exponent=slope,
        reference_exponent=n / q - n - 1,
        log_intercept=intercept,
        deltas=ds,
        norms=tuple(norms),
        max_fit_residual=resid,
    )


# -- Young's inequality on the grid ---------------------------------------------


@dataclass(frozen=True)
class YoungReport:
    """One discrete instance of ||K * u||_p <= ||K||_q ||u||_2."""

    p: float
    q: float
    lhs: float
    rhs: float
    kernel_norm: float
    field_norm: float
    holds: bool


def _grid_p_norm(values: np.ndarray, mask: np.ndarray | None, p: float, spacing: float, n: int) -> float:
    v = np.abs(values if mask is None else np.where(mask, values, 0.0))
    return (float(np.sum(v**p)) * spacing**n) ** (1.0 / p)


def young_convolution_check(
    u, spec: MollifierSpec, p: float = 4, spacing: float = 1 / 128
) -> YoungReport:
    """Check ||J_delta * u||_p <= ||J_delta||_q ||u||_2 with 1/q = 1/p + 1/2.

    The left side runs over the valid (unmasked) nodes; the right side uses
    the kernel's q-norm over its support and u's 2-norm over the whole
    sampled square, a superset of what the convolution touches, so the
    discrete inequality is a faithful instance of the continuum one.
    """
    if not p >= 2:
        raise ValueError(f"p must be >= 2 so that q = 2p/(p+2) is >= 1; got {p!r}")
    q = 2.0 * p / (p + 2.0)
    comps, _, n = _scalar_components(u)
    if spec.dimension != n:
        raise ValueError(f"kernel dimension {spec.dimension} != map dimension {n}")
    kern = kernel_field(spec, spacing)
    kernel_norm = _grid_p_norm(kern.values, None, q, spacing, n)
    lhs_p = 0.0
    field_norm_sq = 0.0
    for comp in comps:
        field = sample_scalar_on_grid(comp, spacing, extent=1.0)
        smoothed = mollify(field, spec)
        lhs_p += _grid_p_norm(smoothed.values, smoothed.valid, p, spacing, n) ** p
        field_norm_sq += _grid_p_norm(field.values, None, 2.0, spacing, n) ** 2
    lhs = lhs_p ** (1.0 / p)
    field_norm = math.sqrt(field_norm_sq)
    rhs = kernel_norm * field_norm
    return YoungReport(
        p=float(p),
        q=q,
        lhs=lhs,
        rhs=rhs,
        kernel_norm=kernel_norm,
        field_norm=field_norm,
        holds=lhs <= rhs * (1.0 + 1e-9),
    )
