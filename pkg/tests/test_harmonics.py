"""Harmonic map construction: zonal polynomials, projection, random draws."""

from fractions import Fraction

import pytest

from ballharmonics.harmonics import (
    HarmonicMap,
    almansi_decomposition,
    harmonic_projection,
    harmonic_space_dimension,
    harmonic_sum,
    identity_map,
    make_harmonic_map,
    random_harmonic_polynomial,
    scale_map,
    zonal_solid_harmonic,
)
from ballharmonics.polynomials import MultiPoly, VectorPoly


def P(n, terms):
    return MultiPoly(n, terms)


class TestIdentity:
    def test_components(self):
        u = identity_map(3)
        assert u.dimension == 3 and u.arity == 3
        assert u.degree == 1 and u.certified
        assert u.body[1] == MultiPoly.variable(3, 1)

    def test_scale(self):
        u = scale_map(identity_map(2), Fraction(1, 2))
        assert u.body[0] == P(2, {(1, 0): Fraction(1, 2)})
        assert u.certified


class TestZonal:
    def test_degree_two_in_three_dims(self):
        # classic quadratic: x1^2 - (x2^2 + x3^2) / 2
        u = zonal_solid_harmonic(3, 2)
        assert u.body[0] == P(
            3, {(2, 0, 0): 1, (0, 2, 0): Fraction(-1, 2), (0, 0, 2): Fraction(-1, 2)}
        )

    def test_planar_chebyshev(self):
        # in the plane the zonal family is the Chebyshev one: deg 2 gives x1^2 - x2^2
        u = zonal_solid_harmonic(2, 2)
        assert u.body[0] == P(2, {(2, 0): 1, (0, 2): -1})
        u3 = zonal_solid_harmonic(2, 3)
        assert u3.body[0] == P(2, {(3, 0): 1, (1, 2): -3})

    @pytest.mark.parametrize("n,k", [(2, 5), (3, 4), (4, 3), (7, 2), (10, 5), (5, 0)])
    def test_always_harmonic_and_homogeneous(self, n, k):
        u = zonal_solid_harmonic(n, k)
        assert u.certified
        assert u.degree == k
        assert u.body[0].is_homogeneous()

    def test_rotated_axis_exact(self):
        # (3/5, 4/5) is exactly unit, so the rotated zonal stays exact
        u = zonal_solid_harmonic(2, 2, axis=(Fraction(3, 5), Fraction(4, 5)))
        assert u.certified
        assert u.body[0].is_exact

    def test_non_unit_axis_rejected(self):
        with pytest.raises(ValueError, match="unit"):
            zonal_solid_harmonic(2, 2, axis=(1, 1))

    def test_line_only_carries_low_degrees(self):
        assert zonal_solid_harmonic(1, 1).degree == 1
        with pytest.raises(ValueError):
            zonal_solid_harmonic(1, 2)


class TestAlmansi:
    def test_reconstruction(self):
        # p = sum_j |x|^(2j) h_j with each h_j harmonic
        p = P(3, {(4, 0, 0): 1, (2, 2, 0): -2, (0, 0, 4): 3})
        parts = almansi_decomposition(p)
        rsq = P(3, {(2, 0, 0): 1, (0, 2, 0): 1, (0, 0, 2): 1})
        rebuilt = MultiPoly(3)
        for j, h in enumerate(parts):
            assert h.is_harmonic()
            rebuilt = rebuilt + rsq**j * h
        assert rebuilt == p

    def test_radius_sq_projects_to_zero(self):
        rsq = P(2, {(2, 0): 1, (0, 2): 1})
        assert harmonic_projection(rsq).is_zero

    def test_projection_fixes_harmonics(self):
        h = zonal_solid_harmonic(3, 3).body[0]
        assert harmonic_projection(h) == h

    def test_projection_is_idempotent(self):
        p = P(2, {(4, 0): 1, (0, 2): 5, (1, 1): -3, (0, 0): 2})
        once = harmonic_projection(p)
        assert once.is_harmonic()
        assert harmonic_projection(once) == once

    def test_projection_handles_mixed_degrees(self):
        p = P(2, {(2, 0): 1, (0, 2): 1, (1, 0): 7})
        proj = harmonic_projection(p)
        # the radial quadratic dies, the linear part survives
        assert proj == P(2, {(1, 0): 7})


@pytest.mark.parametrize(
    "n,k,expected",
    [
        (1, 0, 1),
        (1, 1, 1),
        (1, 2, 0),
        (2, 5, 2),
        (3, 0, 1),
        (3, 1, 3),
        (3, 2, 5),
        (3, 3, 7),
        (4, 2, 9),
        (10, 4, 715 - 55),  # C(13,4) - C(11,2)
    ],
)
def test_harmonic_space_dimension(n, k, expected):
    assert harmonic_space_dimension(n, k) == expected


class TestRandomDraws:
    def test_deterministic_per_seed(self):
        a = random_harmonic_polynomial(3, 3, 11)
        b = random_harmonic_polynomial(3, 3, 11)
        assert a.body == b.body

    def test_seeds_differ(self):
        a = random_harmonic_polynomial(3, 3, 11)
        b = random_harmonic_polynomial(3, 3, 12)
        assert a.body != b.body

    @pytest.mark.parametrize("seed", range(8))
    def test_always_certified_homogeneous(self, seed):
        u = random_harmonic_polynomial(4, 3, seed)
        assert u.certified
        assert u.body[0].is_homogeneous()
        assert u.body[0].total_degree() == 3
        assert not u.body[0].is_zero

    def test_refuses_empty_space(self):
        with pytest.raises(ValueError):
            random_harmonic_polynomial(1, 2, 0)


class TestMakeMap:
    def test_certifies_harmonic_bodies(self):
        u = make_harmonic_map(VectorPoly([P(2, {(1, 0): 1}), P(2, {(2, 0): 1, (0, 2): -1})]))
        assert u.certified
        assert u.degree is None  # mixed degrees 1 and 2

    def test_flags_non_harmonic(self):
        u = make_harmonic_map(P(2, {(2, 0): 1, (0, 2): 1}))
        assert not u.certified

    def test_harmonic_sum(self):
        z1 = zonal_solid_harmonic(3, 1)
        z3 = zonal_solid_harmonic(3, 3)
        u = harmonic_sum([z1, z3], [Fraction(2), Fraction(-1)])
        assert u.certified
        assert u.body[0] == z1.body[0] * 2 - z3.body[0]
