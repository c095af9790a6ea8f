"""Exact bound states of the deformed exponential (generalized flat-bottom)
well for the s-wave relativistic scalar equation, with real, complex-symmetric
and complex-asymmetric couplings, plus an independent numerical oracle."""

__version__ = "0.1.0"

from .core import (DimensionlessKG, PotentialParams, Variant, dimensionless_kg,
                   map_x_to_s, nuclear_radius, params_from_json,
                   potential_poles, potential_value, x_grid)
from .errors import (ConditionViolated, DegenerateError, DivergenceError,
                     EmptySpectrum, KgwsError, NoBracket, NonNormalizable,
                     PoleError, QuadratureFailure, StiffnessError,
                     UnsupportedSigmaError)
from .nu import (HypergeometricTypeProblem, NuBranch, Poly2, branches,
                 candidate_ks, lambda_n, phi_and_weight, quantization_report,
                 quantization_residual)
from .oracle import (GridConfig, OracleReport, find_eigenvalues, pair_levels,
                     residual_check, schrodinger_check, shoot_real_eigenvalues)
from .specfun import (Hyp2F1Args, JacobiParams, beta, gamma_fn, gauss_2f1,
                      jacobi_poly, jacobi_sum_ascending_form,
                      jacobi_sum_product_form, ln_gamma)
from .spectra import (BoundState, has_any_level, kg_problem, level_candidates,
                      max_level_index, pseudo_spectrum, pt_spectrum,
                      nonpt_spectrum, real_spectrum,
                      schrodinger_complex_spectrum, schrodinger_problem,
                      spectrum, xi)
from .wavefn import (WavefunctionSpec, build_wavefunction,
                     normalization_closed_form, normalization_quadrature,
                     rodrigues_eval, schrodinger_wavefunction,
                     wavefunction_with_energy)

__all__ = [
    "BoundState", "ConditionViolated", "DegenerateError", "DimensionlessKG",
    "DivergenceError", "EmptySpectrum", "GridConfig", "Hyp2F1Args",
    "HypergeometricTypeProblem", "JacobiParams", "KgwsError", "NoBracket",
    "NonNormalizable", "NuBranch", "OracleReport", "Poly2", "PoleError",
    "PotentialParams", "QuadratureFailure", "StiffnessError",
    "UnsupportedSigmaError", "Variant", "WavefunctionSpec", "beta", "branches",
    "build_wavefunction", "candidate_ks", "dimensionless_kg", "find_eigenvalues",
    "gamma_fn", "gauss_2f1", "has_any_level", "jacobi_poly",
    "jacobi_sum_ascending_form", "jacobi_sum_product_form", "kg_problem",
    "lambda_n", "level_candidates", "ln_gamma", "map_x_to_s", "max_level_index",
    "nonpt_spectrum", "normalization_closed_form", "normalization_quadrature",
    "nuclear_radius", "pair_levels", "params_from_json", "phi_and_weight",
    "potential_poles", "potential_value", "pseudo_spectrum", "pt_spectrum",
    "quantization_report", "quantization_residual", "real_spectrum",
    "residual_check", "rodrigues_eval", "schrodinger_check",
    "schrodinger_complex_spectrum", "schrodinger_problem",
    "schrodinger_wavefunction", "spectrum", "wavefunction_with_energy",
    "x_grid", "xi",
]
