"""Model atom: soft-core potential, complex-scaled grid and field-free states."""

from cavity_hhg.atom.hamiltonian import (
    build_potential,
    c_product,
    calibrate_depth,
    hamiltonian,
    kinetic_operator,
    parity_residuals,
    solve_field_free,
)
from cavity_hhg.atom.models import (
    AtomModel,
    ComplexScalingConfig,
    FieldFreeState,
    SpatialGrid,
)

__all__ = [
    "AtomModel",
    "ComplexScalingConfig",
    "FieldFreeState",
    "SpatialGrid",
    "build_potential",
    "c_product",
    "calibrate_depth",
    "hamiltonian",
    "kinetic_operator",
    "parity_residuals",
    "solve_field_free",
]
