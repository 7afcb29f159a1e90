"""Bound localized electron states of a 2D electron in a uniform magnetic
field with attractive delta potentials."""

__version__ = "0.1.0"

from .boundstate import (BoundStateSolution, SolveMethod, SpectralCoefficients,
                         b_asymptotic, defining_residual, energy_sum, energy_sum_direct,
                         ground_state_eval, reconstruct_state, schrodinger_residual,
                         solve_b_exact, solve_b_log, transmutation_lambda)
from .currents import (ContinuityReport, CurrentSample, VortexCenter, VortexConfig,
                       continuity_check, curl_closed, current_closed, current_complex,
                       current_gauge, multi_center_current, vortex_intensity)
from .errors import DomainError, SolverError, ValidationError
from .landau import (GuidingCenter, LandauQuantum, basis_u, guiding_center,
                     hamiltonian_fd, landau_energy, landau_state_eval, v_n0)
from .special import (Bracket, Grid2D, bessel_k0, digamma, fd_curl_z, fd_divergence,
                      fd_laplacian, find_root_bracketed, gauss_hermite_nodes,
                      hermite_eval, hermite_fn, trigamma)
from .units import (DerivedScales, PhysicalParams, UnitKind, UnitSystem, bohr_magneton,
                    derive_scales)
from .zerofield import (ZeroFieldState, dwell_ratio, localization_ratio_estimate,
                        localization_ratio_exact, zero_field_state_eval)
