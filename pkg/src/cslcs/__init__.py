"""Chvatal-Sankoff constant toolkit.

Exact LCS combinatorics over binary strings, the transposition-network
view of the LCS grid, the Bernoulli particle model with its stationary
alternating measure, the local-fitting polynomial system with its exact
closed-form solution (gamma = 0.814050...), hydrodynamic scaling checks,
and a reproducible Monte Carlo estimator of gamma.
"""

from . import backend
from .errors import (
    CslcsError,
    InputError,
    InvariantError,
    NumericError,
    SizeLimitError,
    SolverError,
)
from .fit import FitSolution, arratia_steele, closed_form, solve
from .lcs import LcsResult, lcs, lcs_bitparallel, lcs_bruteforce, lcs_dp
from .mc import GammaEstimate, convergence_table, estimate_gamma, exact_small_n
from .model_b import (
    FluxReport,
    ModelBParams,
    StationaryMarginals,
    halfstep,
    invariance_test,
    measure_flux,
    sample_stationary,
    stationary_u,
)
from .network import (
    CellType,
    CrossingReport,
    SiteSequence,
    bottom_output_particles,
    cell_type,
    crossing_report,
    dualize,
    evolve_step_ic,
    independence_test,
    step_initial_condition,
)
from .scaling import (
    DensityProfile,
    FluxFunction,
    empirical_profile,
    rarefaction_density,
    transported_mass,
)
from .strings import BinaryString, Seed, random_string

__version__ = "0.1.0"

BACKEND = backend.NAME

__all__ = [
    "BACKEND",
    "BinaryString",
    "CellType",
    "CrossingReport",
    "CslcsError",
    "DensityProfile",
    "FitSolution",
    "FluxFunction",
    "FluxReport",
    "GammaEstimate",
    "InputError",
    "InvariantError",
    "LcsResult",
    "ModelBParams",
    "NumericError",
    "Seed",
    "SiteSequence",
    "SizeLimitError",
    "SolverError",
    "StationaryMarginals",
    "arratia_steele",
    "bottom_output_particles",
    "cell_type",
    "closed_form",
    "convergence_table",
    "crossing_report",
    "dualize",
    "empirical_profile",
    "estimate_gamma",
    "evolve_step_ic",
    "exact_small_n",
    "halfstep",
    "independence_test",
    "invariance_test",
    "lcs",
    "lcs_bitparallel",
    "lcs_bruteforce",
    "lcs_dp",
    "measure_flux",
    "rarefaction_density",
    "random_string",
    "sample_stationary",
    "solve",
    "stationary_u",
    "step_initial_condition",
    "transported_mass",
]
