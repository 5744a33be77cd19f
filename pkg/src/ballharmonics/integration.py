"""Quadrature over spheres and balls: exact monomial formulas plus Monte Carlo.

Exact route: the integral of x^alpha over the sphere of radius r in R^n is 0
when any exponent is odd, and otherwise

    2 * prod_i Gamma(beta_i) / Gamma(sum_i beta_i) * r^(n - 1 + |alpha|),
    beta_i = (alpha_i + 1) / 2,

all gamma values at integer or half-integer points, so the result is an exact
Fraction times pi**(n // 2).  Ball integrals divide by n + |alpha| and gain
one more power of r.  Polynomials integrate term by term, exactly.

Monte Carlo route: a counter-based Philox generator split into one substream
per 32768-sample block (``Philox(key=seed).jumped(block)``), with per-block
partial sums reduced in block order via ``math.fsum``.  Results are a pure
function of (seed, samples); the worker count changes wall time only.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Sequence

import numpy as np

from .exactmath import PiRational, as_fraction, gamma_half
from .geometry import sphere_area, unit_ball_volume
from .polynomials import DimensionError, MultiPoly

BLOCK_SIZE = 1 << 15

EXACT_METHOD = "exact"
MC_METHOD = "monte_carlo"


@dataclass(frozen=True)
class QuadratureSpec:
    """How to integrate: exactly, or by seeded Monte Carlo."""

    method: str = EXACT_METHOD
    samples: int = 0
    seed: int = 0
    tolerance: float = 1e-12
    workers: int = 1

    def __post_init__(self):
        if self.method not in (EXACT_METHOD, MC_METHOD):
            raise ValueError(
                f"method must be {EXACT_METHOD!r} or {MC_METHOD!r}, got {self.method!r}"
            )
        if not isinstance(self.samples, int) or self.samples < 0:
            raise ValueError(f"samples must be a non-negative integer, got {self.samples!r}")
        if not isinstance(self.seed, int) or self.seed < 0:
            raise ValueError(f"seed must be a non-negative integer, got {self.seed!r}")
        if not self.tolerance > 0:
            raise ValueError(f"tolerance must be positive, got {self.tolerance!r}")
        if not isinstance(self.workers, int) or self.workers < 1:
            raise ValueError(f"workers must be a positive integer, got {self.workers!r}")

    def require_samples(self) -> None:
        if self.method == MC_METHOD and self.samples == 0:
            raise ValueError("monte_carlo quadrature needs samples > 0")


EXACT = QuadratureSpec()


@dataclass(frozen=True)
class IntegralResult:
    """One integral.  ``log_abs_value`` stays finite when ``value`` cannot."""

    value: float
    log_abs_value: float
    standard_error: float
    method: str
    samples: int = 0
    exact: PiRational | None = field(default=None, compare=False)

    @staticmethod
    def from_exact(exact: PiRational) -> "IntegralResult":
        return IntegralResult(
            value=float(exact),
            log_abs_value=exact.log_abs(),
            standard_error=0.0,
            method=EXACT_METHOD,
            exact=exact,
        )


def _check_alpha(n: int, alpha: Sequence[int]) -> tuple[int, ...]:
    a = tuple(alpha)
    if len(a) != n:
        raise DimensionError(f"alpha has {len(a)} entries, expected {n}")
    if any((not isinstance(e, int)) or e < 0 for e in a):
        raise ValueError(f"alpha entries must be non-negative integers, got {a}")
    return a


@lru_cache(maxsize=65536)
def _sphere_monomial_rational(n: int, alpha: tuple[int, ...]) -> Fraction:
    """Rational part of the unit-sphere integral of x^alpha (all alpha_i even)."""
    num = Fraction(2)
    half_powers = 0
    for a in alpha:
        rat, k = gamma_half(a + 1)  # Gamma((a+1)/2)
        num *= rat
        half_powers += k
    den_rat, den_k = gamma_half(n + sum(alpha))  # Gamma((n + |alpha|)/2)
    half_powers -= den_k
    assert half_powers == 2 * (n // 2), "pi half-powers must collapse to an integer power"
    return num / den_rat


def sphere_monomial_integral(n: int, alpha: Sequence[int], radius=1) -> IntegralResult:
    """Exact integral of x^alpha over the sphere {|x| = radius} in R^n."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    a = _check_alpha(n, alpha)
    r = as_fraction(radius)
    if r <= 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    if any(e % 2 for e in a):
        return IntegralResult.from_exact(PiRational.zero(n // 2))
    rational = _sphere_monomial_rational(n, a) * r ** (n - 1 + sum(a))
    return IntegralResult.from_exact(PiRational(rational, n // 2))


def ball_monomial_integral(n: int, alpha: Sequence[int], radius=1) -> IntegralResult:
    """Exact integral of x^alpha over the ball {|x| <= radius} in R^n."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    a = _check_alpha(n, alpha)
    r = as_fraction(radius)
    if r <= 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    if any(e % 2 for e in a):
        return IntegralResult.from_exact(PiRational.zero(n // 2))
    total = n + sum(a)
    rational = _sphere_monomial_rational(n, a) * r**total / total
    return IntegralResult.from_exact(PiRational(rational, n // 2))


def _exact_poly_integral(
    p: MultiPoly, radius, monomial: Callable[..., IntegralResult]
) -> IntegralResult:
    acc = PiRational.zero(p.dimension // 2)
    for exps, c in p.terms():
        part = monomial(p.dimension, exps, radius).exact
        if part is None or part.is_zero:
            continue
        acc = acc + part.scaled(as_fraction(c))
    return IntegralResult.from_exact(acc)


# -- Monte Carlo engine -------------------------------------------------------


def _substream(seed: int, block: int) -> np.random.Generator:
    """Independent stream for one block; counter-based, so jumps are cheap."""
    return np.random.Generator(np.random.Philox(key=seed).jumped(block))


def _mc_blocks(
    samples: int,
    seed: int,
    workers: int,
    block_values: Callable[[np.random.Generator, int], np.ndarray],
) -> tuple[float, float]:
    """Mean and standard error of block_values over ``samples`` draws."""
    nblocks = (samples + BLOCK_SIZE - 1) // BLOCK_SIZE

    def one(block: int) -> tuple[float, float]:
        count = min(BLOCK_SIZE, samples - block * BLOCK_SIZE)
        v = block_values(_substream(seed, block), count)
        return float(np.sum(v)), float(np.dot(v, v))

    if workers > 1 and nblocks > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            partials = list(pool.map(one, range(nblocks)))
    else:
        partials = [one(b) for b in range(nblocks)]
    s1 = math.fsum(p[0] for p in partials)
    s2 = math.fsum(p[1] for p in partials)
    mean = s1 / samples
    if samples > 1:
        var = max(0.0, (s2 - samples * mean * mean) / (samples - 1))
        stderr = math.sqrt(var / samples)
    else:
        stderr = 0.0
    return mean, stderr


def _float_terms(p: MultiPoly) -> list[tuple[tuple[int, ...], float]]:
    return [(exps, float(c)) for exps, c in p.terms()]


def _eval_terms(
    pts: np.ndarray, terms: list[tuple[tuple[int, ...], float]]
) -> np.ndarray:
    total = np.zeros(len(pts))
    for exps, c in terms:
        t = np.full(len(pts), c)
        for axis, e in enumerate(exps):
            if e == 1:
                t *= pts[:, axis]
            elif e:
                t *= pts[:, axis] ** e
        total += t
    return total


def _sphere_points(gen: np.random.Generator, count: int, n: int, radius: float) -> np.ndarray:
    z = gen.standard_normal((count, n))
    norms = np.linalg.norm(z, axis=1)
    norms[norms == 0.0] = 1.0  # probability-zero guard
    return (radius / norms)[:, None] * z


def _ball_points(gen: np.random.Generator, count: int, n: int, radius: float) -> np.ndarray:
    z = gen.standard_normal((count, n))
    norms = np.linalg.norm(z, axis=1)
    norms[norms == 0.0] = 1.0
    radii = radius * gen.random(count) ** (1.0 / n)
    return (radii / norms)[:, None] * z


def _mc_poly_integral(
    p: MultiPoly, radius: float, spec: QuadratureSpec, domain: str
) -> IntegralResult:
    spec.require_samples()
    n = p.dimension
    terms = _float_terms(p)
    if domain == "sphere":
        log_scale = sphere_area(n, radius).log_area
        sampler = _sphere_points
    else:
        log_scale = unit_ball_volume(n).log_volume + n * math.log(radius)
        sampler = _ball_points

    def block_values(gen: np.random.Generator, count: int) -> np.ndarray:
        return _eval_terms(sampler(gen, count, n, radius), terms)

    mean, stderr = _mc_blocks(spec.samples, spec.seed, spec.workers, block_values)
    scale = math.exp(log_scale)
    log_abs = (log_scale + math.log(abs(mean))) if mean != 0.0 else -math.inf
    return IntegralResult(
        value=scale * mean,
        log_abs_value=log_abs,
        standard_error=scale * stderr,
        method=MC_METHOD,
        samples=spec.samples,
    )


def integrate_poly_sphere(
    p: MultiPoly, radius=1, spec: QuadratureSpec = EXACT
) -> IntegralResult:
    """Integral of p over the sphere {|x| = radius} in R^(p.dimension)."""
    r = float(radius)
    if not r > 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    if spec.method == EXACT_METHOD:
        return _exact_poly_integral(p, radius, sphere_monomial_integral)
    return _mc_poly_integral(p, r, spec, "sphere")


def integrate_poly_ball(
    p: MultiPoly, radius=1, spec: QuadratureSpec = EXACT
) -> IntegralResult:
    """Integral of p over the solid ball {|x| <= radius} in R^(p.dimension)."""
    r = float(radius)
    if not r > 0:
        raise ValueError(f"radius must be positive, got {radius!r}")
    if spec.method == EXACT_METHOD:
        return _exact_poly_integral(p, radius, ball_monomial_integral)
    return _mc_poly_integral(p, r, spec, "ball")


# -- ball volume estimators ---------------------------------------------------

HIT_OR_MISS_MAX_DIM = 25


def mc_ball_volume(
    n: int,
    samples: int,
    seed: int = 0,
    estimator: str = "gaussian",
    workers: int = 1,
) -> IntegralResult:
    """Monte Carlo estimate of the unit-ball volume V_n.

    ``hit_or_miss`` draws uniform points in [-1, 1]^n and scales the hit
    fraction by 2^n; the acceptance rate V_n / 2^n collapses exponentially,
    so dimensions above HIT_OR_MISS_MAX_DIM are refused (use ``gaussian``).

    ``gaussian`` importance-samples from N(0, sigma^2 I) with
    sigma^2 = 1/(n+2), which parks the proposal's radial mass just inside
    the unit sphere; weights are exponentiated after subtracting their
    maximum, and the log of the estimate is formed directly in log space,
    so the estimator works in any dimension.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not isinstance(samples, int) or samples < 1:
        raise ValueError(f"samples must be a positive integer, got {samples!r}")
    if estimator == "hit_or_miss":
        if n > HIT_OR_MISS_MAX_DIM:
            raise ValueError(
                f"hit_or_miss is useless past n = {HIT_OR_MISS_MAX_DIM} "
                f"(expected hit rate V_n / 2^n is below 1e-8); "
                f"use estimator='gaussian'"
            )

        def block_values(gen: np.random.Generator, count: int) -> np.ndarray:
            pts = gen.random((count, n)) * 2.0 - 1.0
            return (np.einsum("ij,ij->i", pts, pts) <= 1.0).astype(float)

        mean, stderr = _mc_blocks(samples, seed, workers, block_values)
        scale = 2.0**n
        log_abs = (n * math.log(2.0) + math.log(mean)) if mean > 0.0 else -math.inf
        return IntegralResult(
            value=scale * mean,
            log_abs_value=log_abs,
            standard_error=scale * stderr,
            method=MC_METHOD,
            samples=samples,
        )
    if estimator == "gaussian":
        sigma_sq = 1.0 / (n + 2)
        # weight = (2 pi sigma^2)^(n/2) exp(|x|^2 / (2 sigma^2)) on hits;
        # its maximum over the ball sits at |x| = 1
        log_wmax = 0.5 * n * math.log(2.0 * math.pi * sigma_sq) + 0.5 / sigma_sq

        def block_values(gen: np.random.Generator, count: int) -> np.ndarray:
            pts = gen.standard_normal((count, n)) * math.sqrt(sigma_sq)
            sq = np.einsum("ij,ij->i", pts, pts)
            inside = sq <= 1.0
            out = np.zeros(count)
            out[inside] = np.exp((sq[inside] - 1.0) / (2.0 * sigma_sq))
            return out

        mean, stderr = _mc_blocks(samples, seed, workers, block_values)
        if mean > 0.0:
            log_abs = log_wmax + math.log(mean)
            value = math.exp(log_abs) if log_abs < 709.0 else math.inf
        else:
            log_abs, value = -math.inf, 0.0
        log_se = (log_wmax + math.log(stderr)) if stderr > 0.0 else -math.inf
        return IntegralResult(
            value=value,
            log_abs_value=log_abs,
            standard_error=math.exp(log_se) if log_se > -708.0 else 0.0,
            method=MC_METHOD,
            samples=samples,
        )
    raise ValueError(f"unknown estimator {estimator!r} (use 'hit_or_miss' or 'gaussian')")
