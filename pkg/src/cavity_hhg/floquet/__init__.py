"""Non-Hermitian Floquet engine: operator assembly, resonance solve, symmetry.

Typical usage::

    from cavity_hhg.floquet import FloquetBasisSpec, DriveField, solve_targeted

    basis = FloquetBasisSpec(channel_min=-40, channel_max=40, grid=grid)
    flg = solve_targeted(atom, scaling, DriveField(), basis, seed_index=0)
"""

from cavity_hhg.floquet.cache import EigenstateCache, default_cache_dir, state_key
from cavity_hhg.floquet.models import (
    DriveField,
    FloquetBasisSpec,
    FloquetEigenstate,
    StateLabel,
    Symmetry,
)
from cavity_hhg.floquet.operator import (
    assemble_floquet_operator,
    estimate_memory_mb,
    scaled_dipole,
)
from cavity_hhg.floquet.solver import (
    SolverOptions,
    classify_symmetry,
    extended_c_product,
    fold_to_zone,
    solve_resonance,
    solve_targeted,
    symmetry_residuals,
    theta_trajectory,
)

__all__ = [
    "DriveField",
    "EigenstateCache",
    "FloquetBasisSpec",
    "FloquetEigenstate",
    "SolverOptions",
    "StateLabel",
    "Symmetry",
    "assemble_floquet_operator",
    "classify_symmetry",
    "default_cache_dir",
    "estimate_memory_mb",
    "extended_c_product",
    "fold_to_zone",
    "scaled_dipole",
    "solve_resonance",
    "solve_targeted",
    "state_key",
    "symmetry_residuals",
    "theta_trajectory",
]
