"""Designs, mutually unbiased bases and the Mean King's retrodiction game."""

from .algebra import EPS, IntegrityError, field_create, gaussian_binomial, inner_product, tensor
from .designs import affine_plane, hadamard_design, sylvester_hadamard, verify_design
from .mub import mub_build, verify_mub
from .protocol import build_scenario, run_game, verify_exhaustive
from .realization import hadamard8_realization, incidence_realization, mub_realization
from .reconstruction import psi_function_basis, psi_point_basis

__all__ = [
    "EPS",
    "IntegrityError",
    "affine_plane",
    "build_scenario",
    "field_create",
    "gaussian_binomial",
    "hadamard8_realization",
    "hadamard_design",
    "incidence_realization",
    "inner_product",
    "mub_build",
    "mub_realization",
    "psi_function_basis",
    "psi_point_basis",
    "run_game",
    "sylvester_hadamard",
    "tensor",
    "verify_design",
    "verify_exhaustive",
    "verify_mub",
]
