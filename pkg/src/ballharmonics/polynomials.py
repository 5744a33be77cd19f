"""Sparse multivariate polynomials with exact coefficients.

A polynomial in n variables is a mapping from exponent tuples (length n, one
entry per variable) to coefficients.  Coefficients are ``Fraction`` so that
differentiation, Laplacians and harmonicity checks are exact; an explicit
:meth:`MultiPoly.lowered` call produces a float-coefficient copy, and nothing
else ever introduces floats into a poly.  Instances are immutable, hashable
and safe to share across threads.

Canonical form: zero coefficients are never stored, and for float polys any
coefficient below 1e-14 relative to the largest float coefficient is pruned
so that round-trips through arithmetic stay stable.  Terms iterate in graded
lexicographic order (total degree first, then lexicographic), largest first;
evaluation and printing follow that order deterministically.

The textual format is ``coeff * x1^a1 * x2^a2`` terms joined by `` + `` and
`` - ``, rationals written ``p/q``.  ``parse_poly`` round-trips
``format_poly`` bit-exactly for exact-coefficient polys.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Mapping, Sequence, Union

from .exactmath import as_fraction

Coeff = Union[Fraction, float]
Exponents = tuple  # tuple[int, ...], one entry per variable

FLOAT_PRUNE_REL = 1e-14


class DimensionError(ValueError):
    """Raised when operands disagree on the ambient dimension."""


def _grlex_key(exps: Exponents) -> tuple:
    return (sum(exps), exps)


def _abs_float(c: Coeff) -> float:
    try:
        return abs(float(c))
    except OverflowError:
        return math.inf


class MultiPoly:
    """Immutable sparse polynomial in ``dimension`` variables."""

    __slots__ = ("_dimension", "_terms", "_hash")

    def __init__(
        self,
        dimension: int,
        terms: Mapping[Exponents, Coeff] | Iterable[tuple[Exponents, Coeff]] = (),
    ):
        if not isinstance(dimension, int) or dimension < 1:
            raise DimensionError(f"dimension must be a positive integer, got {dimension!r}")
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Exponents, Coeff] = {}
        for exps, coeff in items:
            exps = tuple(exps)
            if len(exps) != dimension:
                raise DimensionError(
                    f"exponent tuple {exps} has length {len(exps)}, expected {dimension}"
                )
            if any((not isinstance(e, int)) or e < 0 for e in exps):
                raise ValueError(f"exponents must be non-negative integers, got {exps}")
            if isinstance(coeff, float):
                c: Coeff = coeff
            elif isinstance(coeff, (int, Fraction)):
                c = Fraction(coeff)
            else:
                raise TypeError(f"unsupported coefficient type {type(coeff).__name__}")
            if exps in acc:
                c = acc[exps] + c
            if c == 0:
                acc.pop(exps, None)
            else:
                acc[exps] = c
        floats = [abs(c) for c in acc.values() if isinstance(c, float)]
        if floats:
            cutoff = FLOAT_PRUNE_REL * max(floats)
            acc = {
                e: c
                for e, c in acc.items()
                if not (isinstance(c, float) and abs(c) <= cutoff)
            }
        object.__setattr__(self, "_dimension", dimension)
        object.__setattr__(self, "_terms", dict(
            sorted(acc.items(), key=lambda kv: _grlex_key(kv[0]), reverse=True)
        ))
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("MultiPoly is immutable")

    # -- basic views ------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dimension

    def terms(self) -> tuple[tuple[Exponents, Coeff], ...]:
        """Terms in graded lexicographic order, largest first."""
        return tuple(self._terms.items())

    @property
    def is_zero(self) -> bool:
        return not self._terms

    @property
    def is_exact(self) -> bool:
        """True when every coefficient is a Fraction."""
        return all(isinstance(c, Fraction) for c in self._terms.values())

    def total_degree(self) -> int:
        """Maximal term degree; 0 for the zero polynomial."""
        if not self._terms:
            return 0
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(e) for e in self._terms}
        return len(degs) <= 1

    def homogeneous_components(self) -> dict[int, "MultiPoly"]:
        """Split into degree -> homogeneous part (zero poly gives {})."""
        buckets: dict[int, dict[Exponents, Coeff]] = {}
        for exps, c in self._terms.items():
            buckets.setdefault(sum(exps), {})[exps] = c
        return {
            d: MultiPoly(self._dimension, t) for d, t in sorted(buckets.items())
        }

    @staticmethod
    def constant(dimension: int, value) -> "MultiPoly":
        v = value if isinstance(value, float) else Fraction(value)
        return MultiPoly(dimension, {(0,) * dimension: v})

    @staticmethod
    def variable(dimension: int, axis: int) -> "MultiPoly":
        """The coordinate function x_{axis+1}."""
        if not 0 <= axis < dimension:
            raise DimensionError(f"axis {axis} out of range for dimension {dimension}")
        exps = tuple(1 if i == axis else 0 for i in range(dimension))
        return MultiPoly(dimension, {exps: Fraction(1)})

    # -- equality ---------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPoly):
            return NotImplemented
        # dict equality compares coefficients numerically, so an exact poly
        # equals its float twin only when values coincide exactly
        return self._dimension == other._dimension and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            h = hash((self._dimension, frozenset(self._terms.items())))
            object.__setattr__(self, "_hash", h)
        return self._hash

    # -- arithmetic -------------------------------------------------------

    def _check_same_dimension(self, other: "MultiPoly") -> None:
        if self._dimension != other._dimension:
            raise DimensionError(
                f"mixed dimensions {self._dimension} and {other._dimension}"
            )

    def __add__(self, other) -> "MultiPoly":
        if isinstance(other, (int, float, Fraction)):
            other = MultiPoly.constant(self._dimension, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_dimension(other)
        merged = dict(self._terms)
        for exps, c in other._terms.items():
            merged[exps] = merged.get(exps, 0) + c
        return MultiPoly(self._dimension, merged)

    __radd__ = __add__

    def __neg__(self) -> "MultiPoly":
        return MultiPoly(self._dimension, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other) -> "MultiPoly":
        if isinstance(other, (int, float, Fraction)):
            other = MultiPoly.constant(self._dimension, other)
        if not isinstance(other, MultiPoly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other) -> "MultiPoly":
        return (-self) + other

    def __mul__(self, other) -> "MultiPoly":
        if isinstance(other, (int, float, Fraction)):
            if other == 0:
                return MultiPoly(self._dimension)
            scalar = other if isinstance(other, float) else Fraction(other)
            return MultiPoly(
                self._dimension, {e: c * scalar for e, c in self._terms.items()}
            )
        if not isinstance(other, MultiPoly):
            return NotImplemented
        self._check_same_dimension(other)
        a, b = self._terms, other._terms
        if len(a) > len(b):
            a, b = b, a
        out: dict[Exponents, Coeff] = {}
        for ea, ca in a.items():
            for eb, cb in b.items():
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, 0) + ca * cb
        return MultiPoly(self._dimension, out)

    __rmul__ = __mul__

    def __truediv__(self, scalar) -> "MultiPoly":
        if isinstance(scalar, float):
            return self * (1.0 / scalar)
        return self * (Fraction(1) / Fraction(scalar))

    def __pow__(self, exponent: int) -> "MultiPoly":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError(f"polynomial powers must be non-negative ints, got {exponent!r}")
        result = MultiPoly.constant(self._dimension, 1)
        base = self
        e = exponent
        while e:
            if e & 1:
                result = result * base
            base = base * base if e > 1 else base
            e >>= 1
        return result

    def square(self) -> "MultiPoly":
        """self * self using symmetry (about half the coefficient products)."""
        items = list(self._terms.items())
        out: dict[Exponents, Coeff] = {}
        for i, (ea, ca) in enumerate(items):
            key = tuple(2 * x for x in ea)
            out[key] = out.get(key, 0) + ca * ca
            for eb, cb in items[i + 1 :]:
                key = tuple(x + y for x, y in zip(ea, eb))
                out[key] = out.get(key, 0) + 2 * ca * cb
        return MultiPoly(self._dimension, out)

    def lowered(self) -> "MultiPoly":
        """Float-coefficient copy.  The only sanctioned exact-to-float step."""
        return MultiPoly(
            self._dimension, {e: float(c) for e, c in self._terms.items()}
        )

    # -- calculus ---------------------------------------------------------

    def partial_derivative(self, axis: int) -> "MultiPoly":
        if not 0 <= axis < self._dimension:
            raise DimensionError(
                f"axis {axis} out of range for dimension {self._dimension}"
            )
        out: dict[Exponents, Coeff] = {}
        for exps, c in self._terms.items():
            e = exps[axis]
            if e == 0:
                continue
            key = exps[:axis] + (e - 1,) + exps[axis + 1 :]
            out[key] = out.get(key, 0) + c * e
        return MultiPoly(self._dimension, out)

    def laplacian(self) -> "MultiPoly":
        out: dict[Exponents, Coeff] = {}
        for exps, c in self._terms.items():
            for axis, e in enumerate(exps):
                if e < 2:
                    continue
                key = exps[:axis] + (e - 2,) + exps[axis + 1 :]
                out[key] = out.get(key, 0) + c * (e * (e - 1))
        return MultiPoly(self._dimension, out)

    def is_harmonic(self, tol: float | None = None) -> bool:
        """True iff the Laplacian vanishes.

        Exact-coefficient polys are checked exactly unless ``tol`` is given;
        float polys (or an explicit ``tol``) compare every Laplacian
        coefficient against the tolerance (default 1e-12).
        """
        lap = self.laplacian()
        if tol is None and lap.is_exact:
            return lap.is_zero
        bound = 1e-12 if tol is None else tol
        return all(_abs_float(c) <= bound for _, c in lap.terms())

    def euler_degree_check(self) -> bool:
        """True iff <x, grad p> == deg(p) * p (homogeneous polys only)."""
        if not self.is_homogeneous():
            return False
        k = self.total_degree()
        radial = MultiPoly(self._dimension)
        for axis in range(self._dimension):
            radial = radial + MultiPoly.variable(self._dimension, axis) * (
                self.partial_derivative(axis)
            )
        return radial == self * k

    # -- evaluation -------------------------------------------------------

    def evaluate(self, point: Sequence) -> Fraction | float:
        """Value at ``point``.

        Exact (Fraction) when both the coefficients and the point entries are
        exact; float otherwise.  Float accumulation uses ``math.fsum`` over
        terms in graded lexicographic order, so results are deterministic.
        """
        if len(point) != self._dimension:
            raise DimensionError(
                f"point has {len(point)} coordinates, expected {self._dimension}"
            )
        exact_point = all(isinstance(x, (int, Fraction)) for x in point)
        if exact_point and self.is_exact:
            coords = [Fraction(x) for x in point]
            total = Fraction(0)
            for exps, c in self._terms.items():
                term = c
                for x, e in zip(coords, exps):
                    if e:
                        term *= x**e
                total += term
            return total
        coords_f = [float(x) for x in point]
        parts = []
        for exps, c in self._terms.items():
            term = float(c)
            for x, e in zip(coords_f, exps):
                if e:
                    term *= x**e
            parts.append(term)
        return math.fsum(parts)

    def __call__(self, point: Sequence) -> Fraction | float:
        return self.evaluate(point)

    # -- printing ---------------------------------------------------------

    def __repr__(self) -> str:
        return f"MultiPoly({self._dimension}, {format_poly(self)!r})"

    def __str__(self) -> str:
        return format_poly(self)


class VectorPoly:
    """Immutable tuple of MultiPoly components sharing one ambient dimension."""

    __slots__ = ("_components",)

    def __init__(self, components: Iterable[MultiPoly]):
        comps = tuple(components)
        if not comps:
            raise ValueError("VectorPoly needs at least one component")
        dims = {p.dimension for p in comps}
        if len(dims) != 1:
            raise DimensionError(f"components disagree on dimension: {sorted(dims)}")
        object.__setattr__(self, "_components", comps)

    def __setattr__(self, name, value):
        raise AttributeError("VectorPoly is immutable")

    @property
    def components(self) -> tuple[MultiPoly, ...]:
        return self._components

    @property
    def dimension(self) -> int:
        return self._components[0].dimension

    @property
    def arity(self) -> int:
        return len(self._components)

    def __iter__(self):
        return iter(self._components)

    def __len__(self) -> int:
        return len(self._components)

    def __getitem__(self, i: int) -> MultiPoly:
        return self._components[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, VectorPoly):
            return NotImplemented
        return self._components == other._components

    def __hash__(self) -> int:
        return hash(self._components)

    def __add__(self, other: "VectorPoly") -> "VectorPoly":
        if not isinstance(other, VectorPoly):
            return NotImplemented
        if self.arity != other.arity:
            raise DimensionError(
                f"mixed arities {self.arity} and {other.arity}"
            )
        return VectorPoly(p + q for p, q in zip(self, other))

    def __mul__(self, scalar) -> "VectorPoly":
        return VectorPoly(p * scalar for p in self._components)

    __rmul__ = __mul__

    def evaluate(self, point: Sequence) -> tuple:
        return tuple(p.evaluate(point) for p in self._components)

    def __repr__(self) -> str:
        return f"VectorPoly([{', '.join(str(p) for p in self._components)}])"


def as_vector(u: "VectorPoly | MultiPoly") -> VectorPoly:
    """Wrap a scalar poly as a one-component vector; pass vectors through."""
    if isinstance(u, VectorPoly):
        return u
    if isinstance(u, MultiPoly):
        return VectorPoly([u])
    raise TypeError(f"expected MultiPoly or VectorPoly, got {type(u).__name__}")


def gradient(p: MultiPoly) -> tuple[MultiPoly, ...]:
    return tuple(p.partial_derivative(axis) for axis in range(p.dimension))


def _support(p: MultiPoly) -> tuple[int, ...]:
    """Axes that carry a positive exponent somewhere in p.

    Partials along the other axes vanish identically, so callers that sum
    over the gradient can skip them; for near-univariate components in high
    dimension (the identity map above all) this turns a cubic-in-n walk into
    a quadratic one.
    """
    seen: set[int] = set()
    for exps in p._terms:
        for axis, e in enumerate(exps):
            if e and axis not in seen:
                seen.add(axis)
    return tuple(sorted(seen))


def grad_norm_sq(u: VectorPoly | MultiPoly) -> MultiPoly:
    """|grad u|^2 = sum over components and axes of squared partials."""
    vec = as_vector(u)
    acc: dict = {}
    for comp in vec:
        for axis in _support(comp):
            for exps, c in comp.partial_derivative(axis).square()._terms.items():
                acc[exps] = acc.get(exps, 0) + c
    return MultiPoly(vec.dimension, acc)


def radial_pairing(u: VectorPoly | MultiPoly) -> tuple[MultiPoly, ...]:
    """Per component, the Euler pairing <x, grad u^i>."""
    vec = as_vector(u)
    out = []
    for comp in vec:
        acc: dict = {}
        for axis in _support(comp):
            # multiplying a term by x_axis just bumps that exponent
            for exps, c in comp.partial_derivative(axis)._terms.items():
                key = exps[:axis] + (exps[axis] + 1,) + exps[axis + 1 :]
                acc[key] = acc.get(key, 0) + c
        out.append(MultiPoly(vec.dimension, acc))
    return tuple(out)


def compose_linear(p: MultiPoly, matrix: Sequence[Sequence]) -> MultiPoly:
    """p(M x): substitute x_i -> sum_j M[i][j] x_j.

    Matrix entries are converted exactly (floats via their binary value), so
    the composed polynomial has exact coefficients; orthogonality of float
    matrices is only approximate, so harmonicity of the result should be
    checked with a tolerance.
    """
    n = p.dimension
    rows = [list(r) for r in matrix]
    if len(rows) != n or any(len(r) != n for r in rows):
        raise DimensionError(f"matrix must be {n}x{n} for a {n}-variable polynomial")
    forms = [
        MultiPoly(
            n,
            {
                tuple(1 if j == col else 0 for col in range(n)): as_fraction(rows[i][j])
                for j in range(n)
                if as_fraction(rows[i][j]) != 0
            },
        )
        for i in range(n)
    ]
    power_cache: list[dict[int, MultiPoly]] = [
        {0: MultiPoly.constant(n, 1)} for _ in range(n)
    ]

    def form_power(i: int, e: int) -> MultiPoly:
        cache = power_cache[i]
        if e not in cache:
            cache[e] = form_power(i, e - 1) * forms[i]
        return cache[e]

    total = MultiPoly(n)
    for exps, c in p.terms():
        term = MultiPoly.constant(n, c if isinstance(c, float) else Fraction(c))
        for i, e in enumerate(exps):
            if e:
                term = term * form_power(i, e)
        total = total + term
    return total


# -- textual format ---------------------------------------------------------

_TOKEN = re.compile(
    r"\s*("
    r"[+\-*^]"
    r"|x\d+"
    r"|\d+/\d+"
    r"|(?:\d+\.\d*|\.\d+|\d+)(?:[eE][+-]?\d+)?"
    r")"
)


def format_poly(p: MultiPoly) -> str:
    """Canonical text form; see the module docstring for the grammar."""
    if p.is_zero:
        return "0"
    pieces: list[str] = []
    for exps, c in p.terms():
        negative = c < 0
        mag = -c if negative else c
        mono = " * ".join(
            f"x{i + 1}^{e}" if e > 1 else f"x{i + 1}"
            for i, e in enumerate(exps)
            if e
        )
        if isinstance(mag, Fraction):
            coeff_str = "" if (mag == 1 and mono) else str(mag)
        else:
            coeff_str = repr(mag)  # floats always print, even 1.0
        if coeff_str and mono:
            body = f"{coeff_str} * {mono}"
        else:
            body = coeff_str or mono
        if not pieces:
            pieces.append(f"-{body}" if negative else body)
        else:
            pieces.append(f" - {body}" if negative else f" + {body}")
    return "".join(pieces)


def parse_poly(text: str, dimension: int | None = None) -> MultiPoly:
    """Parse the textual format back into a MultiPoly.

    ``dimension`` fixes the ambient dimension (variable indices beyond it are
    an error); when omitted, the largest variable index present is used
    (minimum 1).  Rational coefficients parse to Fraction, decimal or
    exponent-notation ones to float.
    """
    tokens: list[str] = []
    pos = 0
    stripped = text.strip()
    if not stripped:
        raise ValueError("empty polynomial text")
    while pos < len(stripped):
        m = _TOKEN.match(stripped, pos)
        if not m:
            raise ValueError(f"unexpected character at {stripped[pos:pos + 10]!r}")
        tokens.append(m.group(1))
        pos = m.end()

    terms: list[tuple[dict[int, int], Coeff]] = []
    max_index = 0
    i = 0

    def parse_number(tok: str) -> Coeff:
        if "/" in tok:
            return Fraction(tok)
        if "." in tok or "e" in tok or "E" in tok:
            return float(tok)
        return Fraction(int(tok))

    while i < len(tokens):
        sign = 1
        while i < len(tokens) and tokens[i] in "+-":
            if tokens[i] == "-":
                sign = -sign
            i += 1
        if i >= len(tokens):
            raise ValueError("dangling sign at end of polynomial text")
        coeff: Coeff = Fraction(1)
        exps: dict[int, int] = {}
        expect_factor = True
        while i < len(tokens):
            tok = tokens[i]
            if tok in "+-" and not expect_factor:
                break
            if tok == "*":
                if expect_factor:
                    raise ValueError("misplaced '*' in polynomial text")
                expect_factor = True
                i += 1
                continue
            if not expect_factor:
                raise ValueError(f"missing operator before {tok!r}")
            if tok.startswith("x"):
                index = int(tok[1:])
                if index < 1:
                    raise ValueError(f"variable indices start at 1, got {tok!r}")
                power = 1
                if i + 1 < len(tokens) and tokens[i + 1] == "^":
                    if i + 2 >= len(tokens):
                        raise ValueError("dangling '^' in polynomial text")
                    ptok = tokens[i + 2]
                    if not ptok.isdigit():
                        raise ValueError(f"exponent must be a plain integer, got {ptok!r}")
                    power = int(ptok)
                    i += 2
                exps[index - 1] = exps.get(index - 1, 0) + power
                max_index = max(max_index, index)
            elif tok == "^":
                raise ValueError("'^' must follow a variable")
            else:
                coeff = coeff * parse_number(tok)
            expect_factor = False
            i += 1
        if expect_factor:
            raise ValueError("term ended while expecting a factor")
        terms.append((exps, sign * coeff))

    n = dimension if dimension is not None else max(max_index, 1)
    if max_index > n:
        raise DimensionError(
            f"text references x{max_index} but dimension is {n}"
        )
    acc: dict[Exponents, Coeff] = {}
    for exps, c in terms:
        key = tuple(exps.get(axis, 0) for axis in range(n))
        acc[key] = acc.get(key, 0) + c
    return MultiPoly(n, acc)


def format_vector(u: VectorPoly) -> str:
    """One component per line."""
    return "\n".join(format_poly(p) for p in u)


def parse_vector(text: str, dimension: int | None = None) -> VectorPoly:
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines:
        raise ValueError("empty vector text")
    if dimension is None:
        # two passes so every component shares the widest inferred dimension
        probe = [parse_poly(ln) for ln in lines]
        dimension = max(p.dimension for p in probe)
    return VectorPoly([parse_poly(ln, dimension) for ln in lines])
