"""Sparse polynomial arithmetic, calculus, parsing and evaluation."""

import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ballharmonics.polynomials import (
    DimensionError,
    MultiPoly,
    VectorPoly,
    compose_linear,
    format_poly,
    format_vector,
    grad_norm_sq,
    gradient,
    parse_poly,
    parse_vector,
    radial_pairing,
)


def P(n, terms):
    return MultiPoly(n, terms)


class TestConstruction:
    def test_zero_pruning(self):
        p = P(2, {(1, 0): Fraction(0), (0, 1): Fraction(2)})
        assert p.terms() == (((0, 1), Fraction(2)),)

    def test_int_coefficients_become_fractions(self):
        p = P(1, {(2,): 3})
        ((_, c),) = p.terms()
        assert isinstance(c, Fraction) and c == 3

    def test_grlex_order(self):
        p = P(2, {(0, 0): 1, (2, 0): 1, (0, 2): 1, (1, 0): 1})
        assert [e for e, _ in p.terms()] == [(2, 0), (0, 2), (1, 0), (0, 0)]

    def test_wrong_arity_rejected(self):
        with pytest.raises(DimensionError):
            P(2, {(1, 0, 0): 1})

    def test_hashable_and_equal(self):
        a = P(2, {(1, 1): Fraction(1, 2)})
        b = P(2, {(1, 1): Fraction(1, 2)})
        assert a == b and hash(a) == hash(b)
        assert len({a, b}) == 1


class TestArithmetic:
    def test_known_product(self):
        # (x1 + x2)^2 = x1^2 + 2 x1 x2 + x2^2
        s = P(2, {(1, 0): 1, (0, 1): 1})
        sq = s * s
        assert sq == P(2, {(2, 0): 1, (1, 1): 2, (0, 2): 1})
        assert sq == s.square()

    def test_pow(self):
        x = MultiPoly.variable(2, 0)
        assert x**5 == P(2, {(5, 0): 1})
        assert x**0 == MultiPoly.constant(2, 1)

    def test_scalar_ops(self):
        p = P(1, {(1,): Fraction(1, 3)})
        assert (p * 6).terms() == (((1,), Fraction(2)),)
        assert (p / Fraction(1, 3)).terms() == (((1,), Fraction(1)),)

    def test_cancellation(self):
        p = P(2, {(1, 0): 1, (0, 1): 2})
        assert (p - p).is_zero

    def test_mixed_dimension_rejected(self):
        with pytest.raises(DimensionError):
            P(1, {(1,): 1}) + P(2, {(1, 0): 1})


class TestCalculus:
    def test_partial_derivative(self):
        p = P(2, {(3, 1): Fraction(2)})
        assert p.partial_derivative(0) == P(2, {(2, 1): Fraction(6)})
        assert p.partial_derivative(1) == P(2, {(3, 0): Fraction(2)})

    def test_laplacian_of_harmonic_cubic(self):
        # x1^3 - 3 x1 x2^2 has laplacian 6 x1 - 6 x1 = 0
        p = P(2, {(3, 0): 1, (1, 2): -3})
        assert p.laplacian().is_zero
        assert p.is_harmonic()

    def test_laplacian_of_radius_sq(self):
        rsq = P(3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
        assert rsq.laplacian() == MultiPoly.constant(3, 6)
        assert not rsq.is_harmonic()

    def test_euler_degree(self):
        # for homogeneous p of degree k, <x, grad p> = k p
        p = P(3, {(2, 1, 0): 5, (0, 0, 3): -2})
        (pairing,) = radial_pairing(p)
        assert pairing == p * 3

    def test_grad_norm_sq_identity_map(self):
        n = 7
        ident = VectorPoly(MultiPoly.variable(n, i) for i in range(n))
        assert grad_norm_sq(ident) == MultiPoly.constant(n, n)

    def test_gradient_length(self):
        p = P(3, {(1, 1, 0): 1})
        g = gradient(p)
        assert len(g) == 3
        assert g[2].is_zero


class TestEvaluation:
    def test_exact_path(self):
        p = P(2, {(2, 0): Fraction(1), (0, 1): Fraction(-1, 2)})
        val = p.evaluate((Fraction(1, 3), Fraction(2)))
        assert val == Fraction(1, 9) - 1
        assert isinstance(val, Fraction)

    def test_float_path(self):
        p = P(2, {(2, 0): 1.0, (0, 1): -0.5})
        assert p.evaluate((0.5, 0.25)) == pytest.approx(0.25 - 0.125)

    def test_point_arity_checked(self):
        with pytest.raises(DimensionError):
            P(2, {(1, 0): 1}).evaluate((1.0,))


class TestTextFormat:
    @pytest.mark.parametrize(
        "text,terms",
        [
            ("x1^2 - 1/2 * x2^2", {(2, 0): Fraction(1), (0, 2): Fraction(-1, 2)}),
            ("3 * x1 * x2", {(1, 1): Fraction(3)}),
            ("-x1 + 2", {(1,): Fraction(-1), (0,): Fraction(2)}),
            ("x2^3", {(0, 3): Fraction(1)}),
        ],
    )
    def test_parse_known(self, text, terms):
        n = max(len(e) for e in terms)
        assert parse_poly(text, n) == P(n, terms)

    def test_parse_infers_dimension(self):
        assert parse_poly("x3^2").dimension == 3

    def test_float_literals_stay_float(self):
        p = parse_poly("0.5 * x1", 1)
        ((_, c),) = p.terms()
        assert isinstance(c, float)

    def test_roundtrip_exact(self):
        p = P(3, {(2, 0, 1): Fraction(-7, 3), (0, 1, 0): Fraction(5)})
        assert parse_poly(format_poly(p), 3) == p

    def test_vector_roundtrip(self):
        v = VectorPoly([P(2, {(1, 0): 1}), P(2, {(0, 2): Fraction(1, 4)})])
        assert parse_vector(format_vector(v), 2) == v

    def test_parse_rejects_garbage(self):
        with pytest.raises(ValueError):
            parse_poly("x1 * * x2", 2)
        with pytest.raises(ValueError):
            parse_poly("x1 +", 2)
        with pytest.raises(ValueError):
            parse_poly("y1", 1)
        with pytest.raises(ValueError):
            parse_poly("x3", 2)  # index beyond the stated dimension


class TestComposeLinear:
    def test_permutation(self):
        p = P(2, {(2, 0): 1})
        swapped = compose_linear(p, [[0, 1], [1, 0]])
        assert swapped == P(2, {(0, 2): 1})

    def test_rotation_preserves_harmonicity(self):
        # rotate x1^2 - x2^2 by 30 degrees; floats, so tolerance check
        c, s = math.cos(math.pi / 6), math.sin(math.pi / 6)
        p = P(2, {(2, 0): 1, (0, 2): -1})
        q = compose_linear(p, [[c, -s], [s, c]])
        assert q.is_harmonic(tol=1e-12)

    def test_shape_checked(self):
        with pytest.raises(DimensionError):
            compose_linear(P(2, {(1, 0): 1}), [[1, 0]])


# -- property tests ---------------------------------------------------------

DIM = 3

coeffs = st.fractions(
    min_value=Fraction(-50), max_value=Fraction(50), max_denominator=20
)
exponents = st.tuples(*(st.integers(0, 4) for _ in range(DIM)))
polys = st.dictionaries(exponents, coeffs, max_size=6).map(lambda d: MultiPoly(DIM, d))
rational_points = st.tuples(
    *(
        st.fractions(min_value=Fraction(-2), max_value=Fraction(2), max_denominator=8)
        for _ in range(DIM)
    )
)


@given(polys, polys)
def test_property_add_then_subtract_is_identity(p, q):
    assert (p + q) - q == p


@given(polys, polys)
def test_property_product_commutes(p, q):
    assert p * q == q * p


@given(polys, polys)
def test_property_laplacian_is_linear(p, q):
    assert (p + q).laplacian() == p.laplacian() + q.laplacian()


@given(polys, polys, rational_points)
@settings(max_examples=60)
def test_property_evaluation_is_a_ring_hom(p, q, point):
    assert (p * q).evaluate(point) == p.evaluate(point) * q.evaluate(point)
    assert (p + q).evaluate(point) == p.evaluate(point) + q.evaluate(point)


@given(polys)
def test_property_format_parse_roundtrip(p):
    assert parse_poly(format_poly(p), DIM) == p


@given(polys, rational_points)
@settings(max_examples=40)
def test_property_euler_identity_on_homogeneous_parts(p, point):
    # sum_k k * p_k(x) = <x, grad p>(x)
    (pairing,) = radial_pairing(p)
    expected = sum(
        (k * part.evaluate(point) for k, part in p.homogeneous_components().items()),
        start=Fraction(0),
    )
    assert pairing.evaluate(point) == expected


@given(polys)
@settings(max_examples=40)
def test_property_grad_norm_sq_matches_gradient(p):
    explicit = MultiPoly(DIM)
    for g in gradient(p):
        explicit = explicit + g.square()
    assert grad_norm_sq(p) == explicit
