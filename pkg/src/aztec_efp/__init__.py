"""Emptiness formation probability of the free-fermion six-vertex model with
domain wall boundary conditions, and the third-order transition of domino
tilings of an Aztec diamond with a cut-off corner."""

from .asymptotics import (
    FreeEnergyParams,
    SigmaProfile,
    arctic_ellipse,
    finite_size_extrapolate,
    free_energy,
    ode_residual,
    phi_of_R,
    sigma_profile,
    v_critical,
)
from .closed_forms import c_rs, hahn_determinant, meixner_determinant, psi
from .efp_exact import (
    EfpResult,
    ModelParams,
    efp,
    efp_hankel,
    efp_oracle,
    efp_special,
    exponential_tail_ratio,
    hankel_entry,
    partition_functions,
)
from .exact_algebra import AlphaPoly, ExactMatrix, alpha_derivative_operator, det_fraction_free
from .matrix_model import SaddleSolution, density, endpoints, resolvent
from .toda import toda_reconstruct, toda_residual_r, toda_residual_s

__version__ = "0.1.0"
