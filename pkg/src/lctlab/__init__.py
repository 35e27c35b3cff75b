"""Linear canonical transforms, fractional Fourier transforms and their one-parameter groups."""

from .engine import (LCTParams, frft, frft_params, g_alpha, g_alpha_natural, g_alpha_spectrum,
                     g_alpha_time, l_a, l_a_spectrum, lct_chirp, lct_direct, lct_on_grid,
                     lct_output_grid, lct_valid_mask)
from .errors import (AliasingError, AliasingWarning, ConfigError, DegenerateParameterError,
                     LCTError, ParameterError, ResolutionError)
from .fixtures import FIXTURES, HOLDER_FIXTURES, holder_fixture, make_fixture
from .groups import (GroupResidual, SubgroupSpec, compose, d_solution, family_params,
                     group_residual, operator_group_check)
from .profiles import PROFILES, BProfile, get_profile
from .signals import (DEFAULT_POLICY, AliasPolicy, Grid, NormSpec, SampledSignal, bandwidth,
                      boundary_mass, fourier, holder_seminorm, inverse_fourier, load_signal,
                      make_grid, norm, sobolev_norm_spectrum, support_radius)

__version__ = "0.1.0"

__all__ = [
    "AliasPolicy", "AliasingError", "AliasingWarning", "BProfile", "ConfigError",
    "DEFAULT_POLICY", "DegenerateParameterError", "FIXTURES", "Grid", "GroupResidual",
    "HOLDER_FIXTURES", "LCTError", "LCTParams", "NormSpec", "PROFILES", "ParameterError",
    "ResolutionError", "SampledSignal", "SubgroupSpec", "bandwidth", "boundary_mass", "compose",
    "d_solution", "family_params", "fourier", "frft", "frft_params", "g_alpha", "g_alpha_natural",
    "g_alpha_spectrum", "g_alpha_time", "get_profile", "group_residual", "holder_fixture",
    "holder_seminorm", "inverse_fourier", "l_a", "l_a_spectrum", "lct_chirp", "lct_direct",
    "lct_on_grid", "lct_output_grid", "lct_valid_mask", "load_signal", "make_fixture",
    "make_grid", "norm", "operator_group_check", "sobolev_norm_spectrum", "support_radius",
]
