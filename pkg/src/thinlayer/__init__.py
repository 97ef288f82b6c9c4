"""Modal solvers for a solid ball under a thin fluid shell and its equivalent conditions."""

from .analysis import SweepConfig, load_config, run_sweep, sweep_fits
from .ec_operators import acoustic_symbol, compare_operators, elasto_symbol
from .elastic_modes import (MaterialParams, ModalSolidField, build_modal_field,
                            manufactured_forcing, traction)
from .errors import ConfigError, DomainError, NumericalError, ResonanceError
from .fluid_modes import ModalFluidField, build_fluid_field, dirichlet_deficit
from .geometry import SphereGeometry, lb_symbol, scaled_laplacian_symbols
from .norms import ModalNorm, fluid_error_norm, solid_error_norm
from .rates import RateFit, fit_rate
from .solvers import (ExpansionSet, TransmissionSolution, multiscale_terms, remainder,
                      resonance_margin, solve_ec, solve_transmission)
from .special_functions import BesselEval, bessel_eval, sph_j, sph_y

__version__ = "0.1.0"

__all__ = [
    "BesselEval", "ConfigError", "DomainError", "ExpansionSet", "MaterialParams",
    "ModalFluidField", "ModalNorm", "ModalSolidField", "NumericalError", "RateFit",
    "ResonanceError", "SphereGeometry", "SweepConfig", "TransmissionSolution",
    "acoustic_symbol", "bessel_eval", "build_fluid_field", "build_modal_field",
    "compare_operators", "dirichlet_deficit", "elasto_symbol", "fit_rate",
    "fluid_error_norm", "lb_symbol", "load_config", "manufactured_forcing",
    "multiscale_terms", "remainder", "resonance_margin", "run_sweep",
    "scaled_laplacian_symbols", "solid_error_norm", "solve_ec", "solve_transmission",
    "sph_j", "sph_y", "sweep_fits", "traction",
]
