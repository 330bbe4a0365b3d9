"""Pseudo-spectral 2D incompressible Euler on the periodic square, with
first-shell stability diagnostics and perturbation-scaling experiments."""

__version__ = "0.1.0"

from .spectral import (
    FieldError,
    GridSpec,
    RealField,
    SpectralField,
    VelocityField,
    dealias,
    forward_transform,
    grid_l2_norm,
    inverse_transform,
    l2_norm,
    velocity_from_vorticity,
)

__all__ = [
    "__version__",
    "FieldError",
    "GridSpec",
    "RealField",
    "SpectralField",
    "VelocityField",
    "dealias",
    "forward_transform",
    "grid_l2_norm",
    "inverse_transform",
    "l2_norm",
    "velocity_from_vorticity",
]
