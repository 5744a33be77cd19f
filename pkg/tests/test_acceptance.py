"""Acceptance gate: thirteen numbered criteria, one test and verdict line each.

Every test prints ``criterion NN (name): PASS`` / ``... FAIL`` so the verbose
log carries a single line per criterion; tolerances and runtime budgets are
asserted inside the tests themselves.
"""

import math
import pathlib
import subprocess
import sys
import time
from fractions import Fraction

import pytest

from ballharmonics.energetics import (
    concentration_fraction,
    dirichlet_energy,
    energy_profile,
    fit_decay_exponent,
    half_radius_theta,
    verify_decay_bound,
)
from ballharmonics.geometry import unit_ball_volume
from ballharmonics.harmonics import identity_map, zonal_solid_harmonic
from ballharmonics.identities import (
    c1_bound_report,
    green_residual,
    minimiser_bound_check,
    pohozaev_residual,
)
from ballharmonics.suite import (
    check_mc_oracle,
    check_mean_value,
    check_mollifier_scaling,
    check_scope_notes,
    standard_maps,
)

SEED = 7


def verdict(number, name):
    """Decorator printing the one-line verdict for a criterion."""

    def wrap(fn):
        def run(*args, **kwargs):
            try:
                fn(*args, **kwargs)
            except BaseException:
                print(f"criterion {number:02d} ({name}): FAIL")
                raise
            print(f"criterion {number:02d} ({name}): PASS")

        run.__name__ = fn.__name__
        return run

    return wrap


@verdict(1, "volume peak")
def test_criterion_01_volume_peak():
    start = time.perf_counter()
    proc = subprocess.run(
        [sys.executable, "-m", "ballharmonics.cli", "volumes", "--n-max", "200"],
        capture_output=True,
        text=True,
        timeout=10,
    )
    elapsed = time.perf_counter() - start
    assert proc.returncode == 0
    assert "# volume_argmax: 5" in proc.stdout
    row5 = next(
        line for line in proc.stdout.splitlines() if line.startswith("5,")
    )
    v5 = float(row5.split(",")[1])
    reference = float(8 * math.pi**2 / 15)
    assert abs(v5 - reference) / reference < 1e-12
    assert elapsed < 1.0, f"volumes took {elapsed:.2f}s"


@verdict(2, "identity-map energy")
def test_criterion_02_identity_energy():
    start = time.perf_counter()
    for n in range(1, 51):
        expected_unit = n * unit_ball_volume(n).volume
        for r in (0.3, 0.7, 1.0):
            got = dirichlet_energy(identity_map(n), r)
            expected = expected_unit * r**n
            assert abs(got - expected) / expected < 1e-12, (n, r)
    elapsed = time.perf_counter() - start
    assert elapsed < 1.0, f"energy scan took {elapsed:.2f}s"


def _identity_suite_scan(residual_fn):
    worst = 0.0
    for n in range(2, 11):
        for u in standard_maps(n, SEED):
            for r in (0.3, 0.7, 1.0):
                worst = max(worst, residual_fn(u, r).normalized_residual)
    return worst


@verdict(3, "inner variation identity")
def test_criterion_03_pohozaev():
    start = time.perf_counter()
    worst = _identity_suite_scan(pohozaev_residual)
    elapsed = time.perf_counter() - start
    assert worst < 1e-10
    assert elapsed < 30.0, f"scan took {elapsed:.2f}s"


@verdict(4, "boundary flux identity")
def test_criterion_04_green():
    start = time.perf_counter()
    worst = _identity_suite_scan(green_residual)
    elapsed = time.perf_counter() - start
    assert worst < 1e-10
    assert elapsed < 30.0, f"scan took {elapsed:.2f}s"


RADII = (0.0625, 0.125, 0.25, 0.5, 1.0)


@verdict(5, "energy decay law")
def test_criterion_05_decay_law():
    for n in range(2, 7):
        for k in range(1, 5):
            u = zonal_solid_harmonic(n, k)
            fit = fit_decay_exponent(energy_profile(u, RADII))
            assert abs(fit.exponent - (n + 2 * k - 2)) < 1e-9, (n, k)
    # the bound with C = 1 holds for every beta <= n - 0.1: margins increase
    # with beta, so the largest beta is the binding one; a few smaller betas
    # are spot-checked to witness that monotonicity
    for n in range(2, 7):
        for u in standard_maps(n, SEED):
            if u.degree is None or u.degree < 1:
                continue
            betas = (n - 0.1, n - 0.5, n / 2, 0.5)
            margins = [
                verify_decay_bound(u, beta, 1.0, RADII) for beta in betas
            ]
            assert all(rep.holds for rep in margins), (n, u.label)
            assert all(
                a.worst_margin >= b.worst_margin
                for a, b in zip(margins, margins[1:])
            ), (n, u.label)


@verdict(6, "dyadic contraction")
def test_criterion_06_dyadic_contraction():
    for n in range(2, 7):
        for u in standard_maps(n, SEED):
            if u.degree == 0:
                continue
            theta = half_radius_theta(u, 1.0)
            assert theta < 1.0, (n, u.label)
            if u.degree is not None:
                expected = 2.0 ** -(n + 2 * u.degree - 2)
                assert abs(theta - expected) / expected < 1e-12, (n, u.label)


@verdict(7, "boundary concentration")
def test_criterion_07_concentration():
    previous = -math.inf
    for n in range(2, 201):
        got = concentration_fraction(identity_map(n), 0.9)
        assert abs(got - (1 - 0.9**n)) < 1e-12, n
        assert got > previous, n
        previous = got
        if n >= 88:
            assert got > 1 - 1e-4, n
    # n = 88 is where 0.9^n first drops below 1e-4
    assert 0.9**87 > 1e-4 > 0.9**88


@verdict(8, "minimiser bound")
def test_criterion_08_minimiser_bound():
    for n in range(3, 51):
        rep = minimiser_bound_check(identity_map(n))
        expected = 2 * (n - 1) / (n - 2)
        assert abs(rep.margin_ratio - expected) / expected < 1e-12, n
    for n in range(3, 11):
        for u in standard_maps(n, SEED):
            if u.degree == 0:
                continue  # constant maps carry no energy to compare
            assert minimiser_bound_check(u).margin_ratio > 1.0, (n, u.label)


@verdict(9, "O(1/n) constant")
def test_criterion_09_c1_rate():
    previous = math.inf
    for n in range(3, 201):
        scaled = float(Fraction(2, n - 2) * n)
        assert scaled < previous, n
        previous = scaled
    # |c1 n - 2| = 4/(n - 2) crosses the 0.2 threshold exactly at n = 22
    # (4/20 = 1/5), so the tail test reads "<= 0.2 from 22, < 0.2 after"
    for n in range(22, 201):
        gap = abs(Fraction(2, n - 2) * n - 2)
        assert gap <= Fraction(1, 5), n
        if n >= 23:
            assert gap < Fraction(1, 5), n
    # pipeline agreement on a spot-check range
    for n in (3, 10, 22, 40):
        rep = c1_bound_report(identity_map(n))
        assert rep.constant == pytest.approx(2 / (n - 2), rel=1e-15)
        assert rep.margin_ratio > 1.0


@verdict(10, "mean-value property")
def test_criterion_10_mean_value():
    start = time.perf_counter()
    result = check_mean_value(SEED)
    elapsed = time.perf_counter() - start
    assert result.details["sup_error"] < 1e-4
    assert result.details["convergence_order"] >= 1.8
    assert all(d > 1e-3 for d in result.details["control_defects"])
    assert result.passed
    assert elapsed < 120.0, f"mean-value took {elapsed:.2f}s"


@verdict(11, "Monte Carlo oracle")
def test_criterion_11_mc_oracle():
    start = time.perf_counter()
    result = check_mc_oracle(SEED, workers=1)
    elapsed = time.perf_counter() - start
    assert result.details["samples"] == 1_000_000
    for n in (2, 5, 10):
        assert result.details[f"hits_of_10_n{n}"] >= 9, n
    assert result.passed
    assert elapsed < 60.0, f"oracle took {elapsed:.2f}s"


@verdict(12, "mollifier scaling")
def test_criterion_12_mollifier_scaling():
    result = check_mollifier_scaling()
    assert result.passed
    assert result.details["worst_exponent_gap"] < 0.05
    # q = 1 reproduces the 1/delta blow-up of the kernel gradient in any n
    assert result.details["n2_q1"] == pytest.approx(-1.0, abs=0.05)


@verdict(13, "documented exclusions")
def test_criterion_13_scope_notes():
    result = check_scope_notes()
    assert result.passed
    notes = " ".join(str(v) for v in result.details.values())
    assert "weakly harmonic sequences" in notes
    assert "decay constant" in notes
    assert "distributional" in notes
    readme_path = pathlib.Path(__file__).resolve().parents[1] / "README.md"
    readme = readme_path.read_text(encoding="utf-8")
    assert "Scope" in readme or "scope" in readme
