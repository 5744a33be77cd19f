"""Harmonic polynomial maps on the unit ball, with exact energy bookkeeping.

The package builds harmonic maps (zonal, random, hand-written), integrates
polynomials over balls and spheres exactly or by seeded Monte Carlo, and
certifies the energy identities and concentration effects that make high
dimensions behave the way they do.

Submodules are imported lazily so that lightweight entry points (volume
tables, shell widths) never pay for numpy or scipy.
"""

from __future__ import annotations

from importlib import import_module

from ._version import VERSION as __version__

_EXPORTS = {
    # exact scalars
    "PiRational": "exactmath",
    "as_fraction": "exactmath",
    "gamma_half": "exactmath",
    # polynomials
    "MultiPoly": "polynomials",
    "VectorPoly": "polynomials",
    "DimensionError": "polynomials",
    "parse_poly": "polynomials",
    "format_poly": "polynomials",
    "parse_vector": "polynomials",
    "format_vector": "polynomials",
    "gradient": "polynomials",
    "grad_norm_sq": "polynomials",
    "radial_pairing": "polynomials",
    "compose_linear": "polynomials",
    "as_vector": "polynomials",
    # geometry
    "BallVolume": "geometry",
    "SphereArea": "geometry",
    "ShellSpec": "geometry",
    "unit_ball_volume": "geometry",
    "unit_ball_volume_exact": "geometry",
    "sphere_area": "geometry",
    "sphere_area_exact": "geometry",
    "volume_argmax": "geometry",
    "shell_volume_fraction": "geometry",
    "shell_width_for_mass": "geometry",
    # integration
    "QuadratureSpec": "integration",
    "EXACT": "integration",
    "IntegralResult": "integration",
    "sphere_monomial_integral": "integration",
    "ball_monomial_integral": "integration",
    "integrate_poly_sphere": "integration",
    "integrate_poly_ball": "integration",
    "mc_ball_volume": "integration",
    # harmonic maps
    "HarmonicMap": "harmonics",
    "make_harmonic_map": "harmonics",
    "identity_map": "harmonics",
    "scale_map": "harmonics",
    "harmonic_sum": "harmonics",
    "zonal_solid_harmonic": "harmonics",
    "almansi_decomposition": "harmonics",
    "harmonic_projection": "harmonics",
    "harmonic_space_dimension": "harmonics",
    "random_harmonic_polynomial": "harmonics",
    # energies
    "EnergyProfile": "energetics",
    "DecayFit": "energetics",
    "DecayBoundReport": "energetics",
    "dirichlet_energy": "energetics",
    "surface_energy_total": "energetics",
    "normal_energy": "energetics",
    "energy_profile": "energetics",
    "fit_decay_exponent": "energetics",
    "verify_decay_bound": "energetics",
    "concentration_fraction": "energetics",
    "half_radius_theta": "energetics",
    # variational identities
    "ResidualReport": "identities",
    "pohozaev_residual": "identities",
    "green_residual": "identities",
    "minimiser_bound_check": "identities",
    "c1_bound_report": "identities",
    "VolumeDecayRow": "identities",
    "VolumeDecayTable": "identities",
    "volume_decay_chain": "identities",
    # mollifier lab
    "MollifierSpec": "mollifier",
    "GridField": "mollifier",
    "sample_scalar_on_grid": "mollifier",
    "build_mollifier": "mollifier",
    "mollify": "mollifier",
    "direct_mollify_at": "mollifier",
    "MeanValueReport": "mollifier",
    "mean_value_check": "mollifier",
    "MeanValueConvergence": "mollifier",
    "mean_value_convergence": "mollifier",
    "GradientRatioReport": "mollifier",
    "gradient_estimate_report": "mollifier",
    "gradient_estimate_ratio": "mollifier",
    "GradientScalingFit": "mollifier",
    "mollifier_gradient_scaling": "mollifier",
    "YoungReport": "mollifier",
    "young_convolution_check": "mollifier",
    # verification suite
    "run_suite": "suite",
    "SuiteReport": "suite",
    "CheckResult": "suite",
    "standard_maps": "suite",
}

__all__ = ["__version__", *sorted(_EXPORTS)]


def __getattr__(name: str):
    try:
        module_name = _EXPORTS[name]
    except KeyError:
        raise AttributeError(f"module {__name__!r} has no attribute {name!r}") from None
    module = import_module(f".{module_name}", __name__)
    value = getattr(module, name)
    globals()[name] = value
    return value


def __dir__() -> list[str]:
    return sorted(set(globals()) | set(__all__))
