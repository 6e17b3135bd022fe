"""Rayleigh-wave secular equation with impedance and perturbed boundary conditions."""

from ._core import (
    BoundaryParams,
    ConstraintViolation,
    InvalidArgument,
    Material,
    RayleighError,
    RegimeError,
    SingularSpeed,
    axis_min_abs,
    boundary_system_matrix,
    decay_exponents,
    determinant_oracle,
    energy_identity_check,
    existence_map,
    find_subsonic_root,
    hurwitz_convergence_check,
    key_inequality_ratio,
    oracle_factor,
    restricted_quadratic_form,
    scan_upper_halfplane,
    secular,
    secular_array,
    secular_impedance,
    secular_nondim,
    verify_maint11,
    winding_number,
)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
