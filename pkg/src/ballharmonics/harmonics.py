"""Harmonic polynomial maps on R^n: constructors, projection, certification.

A :class:`HarmonicMap` wraps a vector of polynomials together with a
``certified`` flag that is set by actually checking the Laplacian of every
component (exactly, for exact coefficients).  Constructors here only ever
return certified maps; the flag exists so that downstream identity checks can
refuse maps whose harmonicity was never established.

Zonal harmonics are built from the Gegenbauer three-term recurrence,
homogenised on the formal pair (t, s) = (<x, axis>, |x|^2):

    R_0 = 1,  R_1 = 2 lambda t,
    k R_k = 2 (k - 1 + lambda) t R_{k-1} - (k - 2 + 2 lambda) s R_{k-2},

with lambda = n/2 - 1.  For n = 2 (lambda = 0) the recurrence degenerates and
the Chebyshev form R_k = 2 t R_{k-1} - s R_{k-2} with R_1 = t is used instead.

Harmonic projection uses the Almansi decomposition
p = sum_j |x|^(2j) h_j (h_j harmonic): the Laplacian lowers each |x|^(2j) h_j
by an explicit nonzero constant, so the h_j are recovered recursively from
the decomposition of the Laplacian, all in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Sequence

import numpy as np

from .exactmath import as_fraction
from .polynomials import MultiPoly, VectorPoly, as_vector


@dataclass(frozen=True)
class HarmonicMap:
    """A polynomial map u: R^n -> R^m with a verified-harmonic flag.

    ``degree`` is the common homogeneity degree when every component is
    homogeneous of one degree, and None otherwise.
    """

    body: VectorPoly
    degree: int | None
    certified: bool
    label: str = ""

    @property
    def dimension(self) -> int:
        return self.body.dimension

    @property
    def arity(self) -> int:
        return self.body.arity


def make_harmonic_map(body: VectorPoly | MultiPoly, label: str = "") -> HarmonicMap:
    """Wrap a polynomial (vector) after checking harmonicity of each component."""
    vec = as_vector(body)
    certified = all(comp.is_harmonic() for comp in vec)
    homogeneous = all(comp.is_homogeneous() for comp in vec)
    degrees = {comp.total_degree() for comp in vec if not comp.is_zero}
    if homogeneous and len(degrees) <= 1:
        degree: int | None = degrees.pop() if degrees else 0
    else:
        degree = None
    return HarmonicMap(body=vec, degree=degree, certified=certified, label=label)


def identity_map(n: int) -> HarmonicMap:
    """u(x) = x, the simplest non-constant harmonic map."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    body = VectorPoly([MultiPoly.variable(n, axis) for axis in range(n)])
    return make_harmonic_map(body, label=f"identity(n={n})")


def scale_map(u: HarmonicMap, factor, label: str | None = None) -> HarmonicMap:
    """The map factor * u; harmonicity is preserved, so it is re-certified cheaply."""
    scalar = factor if isinstance(factor, float) else as_fraction(factor)
    return make_harmonic_map(
        u.body * scalar, label=label if label is not None else f"{u.label} * {factor}"
    )


def harmonic_sum(
    maps: Sequence[HarmonicMap],
    coefficients: Sequence | None = None,
    label: str = "",
) -> HarmonicMap:
    """Linear combination of maps with equal dimension and arity."""
    if not maps:
        raise ValueError("need at least one map")
    coeffs = [Fraction(1)] * len(maps) if coefficients is None else list(coefficients)
    if len(coeffs) != len(maps):
        raise ValueError("one coefficient per map required")
    total = maps[0].body * (coeffs[0] if isinstance(coeffs[0], float) else as_fraction(coeffs[0]))
    for u, c in zip(maps[1:], coeffs[1:]):
        total = total + u.body * (c if isinstance(c, float) else as_fraction(c))
    return make_harmonic_map(total, label=label or "sum")


# -- zonal harmonics ----------------------------------------------------------

_TS = dict  # {(t_power, s_power): Fraction}, a poly in the formal pair (t, s)


def _ts_scale(p: _TS, factor: Fraction) -> _TS:
    return {k: c * factor for k, c in p.items()}


def _ts_add_shifted(tp: _TS, which: int, scale: Fraction, acc: _TS) -> None:
    """acc += scale * (t if which == 0 else s) * tp, in place."""
    for (a, b), c in tp.items():
        key = (a + 1, b) if which == 0 else (a, b + 1)
        acc[key] = acc.get(key, Fraction(0)) + scale * c


def _zonal_ts(n: int, k: int) -> _TS:
    """Degree-k zonal kernel as a polynomial in (t, s) = (<x, a>, |x|^2)."""
    if k == 0:
        return {(0, 0): Fraction(1)}
    lam = Fraction(n, 2) - 1
    if lam == 0:
        prev2: _TS = {(0, 0): Fraction(1)}
        prev1: _TS = {(1, 0): Fraction(1)}
        for j in range(2, k + 1):
            cur: _TS = {}
            _ts_add_shifted(prev1, 0, Fraction(2), cur)
            _ts_add_shifted(prev2, 1, Fraction(-1), cur)
            prev2, prev1 = prev1, cur
        return prev1
    prev2 = {(0, 0): Fraction(1)}
    prev1 = {(1, 0): 2 * lam}
    for j in range(2, k + 1):
        cur = {}
        _ts_add_shifted(prev1, 0, Fraction(2) * (j - 1 + lam), cur)
        _ts_add_shifted(prev2, 1, -(Fraction(j - 2) + 2 * lam), cur)
        cur = _ts_scale(cur, Fraction(1, j))
        prev2, prev1 = prev1, cur
    return prev1


def zonal_solid_harmonic(
    n: int, k: int, axis: Sequence | None = None
) -> HarmonicMap:
    """The degree-k harmonic polynomial symmetric about ``axis`` (default e1).

    The axis must have exactly unit norm in exact arithmetic: rational
    entries with sum of squares 1 (coordinate axes, (3/5, 4/5), ...).  That
    is what makes the result exactly harmonic and the certification exact.
    n = 1 admits only k <= 1; for k >= 2 there is no nonzero harmonic
    polynomial of that degree in one variable.
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"degree must be a non-negative integer, got {k!r}")
    if axis is None:
        axis_f = [Fraction(0)] * n
        axis_f[0] = Fraction(1)
    else:
        if len(axis) != n:
            raise ValueError(f"axis has {len(axis)} entries, expected {n}")
        axis_f = [as_fraction(a) for a in axis]
    norm_sq = sum(a * a for a in axis_f)
    if norm_sq != 1:
        raise ValueError(
            f"axis must have exactly unit norm; got |axis|^2 = {norm_sq}. "
            f"Use rational unit vectors such as a coordinate axis or (3/5, 4/5)."
        )
    label = f"zonal(n={n}, k={k})"
    if k == 0:
        return make_harmonic_map(MultiPoly.constant(n, 1), label=label)
    if n == 1:
        if k >= 2:
            raise ValueError(
                "no nonzero degree-k harmonic polynomial exists in one variable for k >= 2"
            )
        return make_harmonic_map(MultiPoly.variable(1, 0) * axis_f[0], label=label)
    t_poly = MultiPoly(
        n,
        {
            tuple(1 if j == i else 0 for j in range(n)): a
            for i, a in enumerate(axis_f)
            if a != 0
        },
    )
    s_poly = MultiPoly(
        n,
        {
            tuple(2 if j == i else 0 for j in range(n)): Fraction(1)
            for i in range(n)
        },
    )
    t_pows: dict[int, MultiPoly] = {0: MultiPoly.constant(n, 1)}
    s_pows: dict[int, MultiPoly] = {0: MultiPoly.constant(n, 1)}

    def cached_power(cache: dict[int, MultiPoly], base: MultiPoly, e: int) -> MultiPoly:
        if e not in cache:
            cache[e] = cached_power(cache, base, e - 1) * base
        return cache[e]

    total = MultiPoly(n)
    for (a, b), c in sorted(_zonal_ts(n, k).items()):
        term = cached_power(t_pows, t_poly, a) * cached_power(s_pows, s_poly, b) * c
        total = total + term
    return make_harmonic_map(total, label=label)


# -- harmonic projection ------------------------------------------------------


def _radius_sq(n: int) -> MultiPoly:
    return MultiPoly(
        n, {tuple(2 if j == i else 0 for j in range(n)): Fraction(1) for i in range(n)}
    )


def almansi_decomposition(p: MultiPoly) -> list[MultiPoly]:
    """Harmonic parts [h_0, h_1, ...] with p = sum_j |x|^(2j) h_j.

    Requires a homogeneous input (each h_j is then homogeneous of degree
    deg(p) - 2j).  Exact for exact coefficients.
    """
    if not p.is_homogeneous():
        raise ValueError("Almansi decomposition needs a homogeneous polynomial")
    if p.is_zero:
        return [p]
    n = p.dimension
    k = p.total_degree()
    lap = p.laplacian()
    if lap.is_zero:
        return [p]
    lower = almansi_decomposition(lap)
    parts: list[MultiPoly] = [MultiPoly(n)] * (len(lower) + 1)
    for j, g in enumerate(lower, start=1):
        # Delta(|x|^(2j) h) = 2j (2k - 2j + n - 2) |x|^(2j-2) h for deg h = k - 2j
        divisor = 2 * j * (2 * k - 2 * j + n - 2)
        parts[j] = g * Fraction(1, divisor)
    rest = p
    r2 = _radius_sq(n)
    r2j = MultiPoly.constant(n, 1)
    for j in range(1, len(parts)):
        r2j = r2j * r2
        rest = rest - r2j * parts[j]
    parts[0] = rest
    return parts


def harmonic_projection(p: MultiPoly) -> MultiPoly:
    """The harmonic component h_0 of p in its Almansi decomposition.

    General (non-homogeneous) inputs are split into homogeneous parts first;
    already-harmonic inputs are returned unchanged, exactly.
    """
    if p.is_zero or p.laplacian().is_zero:
        return p
    total = MultiPoly(p.dimension)
    for _, comp in sorted(p.homogeneous_components().items()):
        total = total + almansi_decomposition(comp)[0]
    return total


def harmonic_space_dimension(n: int, k: int) -> int:
    """Dimension of the space of degree-k harmonic polynomials in n variables."""
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"degree must be a non-negative integer, got {k!r}")
    full = math.comb(n + k - 1, k)
    below = math.comb(n + k - 3, k - 2) if k >= 2 else 0
    return full - below


# -- random harmonic polynomials ----------------------------------------------


def _degree_monomials(n: int, k: int) -> Iterator[tuple[int, ...]]:
    """All exponent tuples of total degree k, lexicographically descending."""
    if n == 1:
        yield (k,)
        return
    for first in range(k, -1, -1):
        for rest in _degree_monomials(n - 1, k - first):
            yield (first,) + rest


def random_harmonic_polynomial(n: int, k: int, seed: int) -> HarmonicMap:
    """Seeded random degree-k harmonic polynomial (scalar map) in n variables.

    Draws small integer coefficients on all degree-k monomials with a Philox
    generator and projects onto the harmonic subspace; redraws in-stream on
    the measure-zero event that the projection vanishes.  Deterministic in
    (n, k, seed).
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError(f"dimension must be a positive integer, got {n!r}")
    if not isinstance(k, int) or k < 0:
        raise ValueError(f"degree must be a non-negative integer, got {k!r}")
    if harmonic_space_dimension(n, k) == 0:
        raise ValueError(
            f"the space of degree-{k} harmonic polynomials in {n} variable(s) is zero"
        )
    gen = np.random.Generator(np.random.Philox(key=seed))
    monomials = list(_degree_monomials(n, k))
    label = f"random(n={n}, k={k}, seed={seed})"
    while True:
        coeffs = gen.integers(-9, 10, size=len(monomials))
        if not np.any(coeffs):
            continue
        p = MultiPoly(
            n,
            {
                m: Fraction(int(c))
                for m, c in zip(monomials, coeffs)
                if c
            },
        )
        h = harmonic_projection(p)
        if not h.is_zero:
            return make_harmonic_map(h, label=label)
