"""Targeted resonance eigensolver for the extended Floquet operator.

A resonance is identified by its overlap with a field-free eigenstate embedded
in channel n = 0. Large problems use shift-invert Arnoldi iteration about the
field-free energy: the shifted operator is factored once with a sparse LU and
its inverse applied through a ``LinearOperator``. Starting the iteration from
the embedded seed keeps the Krylov space inside the seed's dynamical-symmetry
sector and makes repeated runs reproducible.
"""

from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import TYPE_CHECKING

import numpy as np
import scipy.linalg
from pydantic import BaseModel, Field
from scipy import integrate, sparse
from scipy.sparse import linalg as spla

from cavity_hhg.atom.hamiltonian import solve_field_free
from cavity_hhg.atom.models import (
    AtomModel,
    ComplexScalingConfig,
    FieldFreeState,
    SpatialGrid,
)
from cavity_hhg.errors import (
    EigensolverError,
    StateIdentificationError,
    SymmetryBrokenError,
)
from cavity_hhg.floquet.models import (
    DriveField,
    FloquetBasisSpec,
    FloquetEigenstate,
    StateLabel,
    Symmetry,
)
from cavity_hhg.floquet.operator import assemble_floquet_operator

if TYPE_CHECKING:
    from collections.abc import Sequence

_logger = logging.getLogger(__name__)

__all__ = [
    "SolverOptions",
    "classify_symmetry",
    "extended_c_product",
    "fold_to_zone",
    "solve_resonance",
    "solve_targeted",
    "symmetry_residuals",
    "theta_trajectory",
]

_WIDTH_TOL = 1e-10
_SYMMETRY_BROKEN = 0.1
_SYMMETRY_WARN = 1e-6
_EDGE_LOSS_TOL = 1e-8


class SolverOptions(BaseModel):
    """Tuning knobs for the resonance eigensolver.

    Attributes:
        num_eigenpairs: Eigenpairs computed around the shift.
        overlap_floor: Minimum |c-overlap| with the seed for a valid match.
        dense_limit: Dense diagonalization below this extended dimension.
        arpack_tol: Convergence tolerance passed to ARPACK.
        residual_tol: Accepted relative eigenpair residual.
        shift_offset: Offset added to the seed energy to keep the shifted
            operator nonsingular.
        memory_budget_mb: Budget for the operator factorization, or ``None``.
    """

    model_config = {"frozen": True, "extra": "forbid"}

    num_eigenpairs: int = Field(default=8, ge=1)
    overlap_floor: float = Field(default=0.5, ge=0, le=1)
    dense_limit: int = Field(default=5000, ge=0)
    arpack_tol: float = Field(default=1e-12, ge=0)
    residual_tol: float = Field(default=1e-8, gt=0)
    shift_offset: float = 1e-6
    memory_budget_mb: float | None = Field(default=4096.0, gt=0)


# ------------------------------------------------------------------ #
# Extended-space algebra                                               #
# ------------------------------------------------------------------ #


def extended_c_product(a: np.ndarray, b: np.ndarray, grid: SpatialGrid) -> complex:
    """Sum over channels of the c-product of channel functions.

    Args:
        a: Channel array of shape (num_channels, grid.points).
        b: Channel array with the same shape as ``a``.
        grid: Spatial grid of the channel functions.

    Returns:
        Sum_n int a_n(x) b_n(x) dx.
    """
    if a.shape != b.shape:
        raise ValueError(f"Channel arrays differ in shape: {a.shape} vs {b.shape}")
    return complex(integrate.trapezoid(a * b, dx=grid.spacing, axis=-1).sum())


def _embed_seed(seed: FieldFreeState, basis: FloquetBasisSpec) -> np.ndarray:
    embedded = np.zeros((basis.num_channels, basis.grid.points), dtype=np.complex128)
    embedded[-basis.channel_min] = seed.wavefunction
    return embedded


def symmetry_residuals(
    channels: np.ndarray, channel_min: int
) -> dict[Symmetry, float]:
    """Relative residuals of phi_n(x) = S (-1)^n phi_n(-x) for S = +1 and -1."""
    total = np.linalg.norm(channels)
    if total == 0:
        return {"plus": 0.0, "minus": 0.0}
    n = np.arange(channel_min, channel_min + channels.shape[0])
    alternation = np.where(n % 2 == 0, 1.0, -1.0)[:, None]
    mirrored = alternation * channels[:, ::-1]
    return {
        "plus": float(np.linalg.norm(channels - mirrored) / total),
        "minus": float(np.linalg.norm(channels + mirrored) / total),
    }


def _classify(channels: np.ndarray, channel_min: int) -> tuple[Symmetry, float]:
    residuals = symmetry_residuals(channels, channel_min)
    symmetry: Symmetry = min(residuals, key=residuals.__getitem__)
    residual = residuals[symmetry]
    if residual > _SYMMETRY_BROKEN:
        raise SymmetryBrokenError(
            f"Floquet state matches neither dynamical symmetry: residuals "
            f"plus={residuals['plus']:.3g}, minus={residuals['minus']:.3g}"
        )
    if residual > _SYMMETRY_WARN:
        _logger.warning(
            f"Dynamical symmetry '{symmetry}' holds only to residual {residual:.2e}"
        )
    return symmetry, residual


def classify_symmetry(state: FloquetEigenstate) -> Symmetry:
    """Return the dynamical symmetry label minimizing the parity residual.

    Args:
        state: Floquet eigenstate with populated channels.

    Returns:
        ``"plus"`` or ``"minus"``.

    Raises:
        SymmetryBrokenError: If both labels leave a residual above 0.1.
    """
    return _classify(state.channels, state.channel_min)[0]


def fold_to_zone(
    quasienergy: complex,
    channels: np.ndarray,
    reference_energy: float,
    frequency: float,
    grid: SpatialGrid | None = None,
) -> tuple[complex, np.ndarray]:
    """Shift a quasienergy into the zone centred on ``reference_energy``.

    The diagonal blocks carry H + n * omega0, so replacing eps by
    eps - m * omega0 takes phi'_n = phi_{n+m}: the channel functions move m
    rows toward lower Fourier index. Rows shifted past the basis edge are
    discarded.

    Args:
        quasienergy: Quasienergy of the eigenpair.
        channels: Channel array of shape (num_channels, points).
        reference_energy: Energy the zone is centred on.
        frequency: Drive frequency omega0.
        grid: Grid of the channel functions; when given, the folded channels
            are c-normalized again and lost edge weight is reported.

    Returns:
        The folded quasienergy and the relabelled channel array.
    """
    shift = round((quasienergy.real - reference_energy) / frequency)
    if shift == 0:
        return quasienergy, channels
    _logger.warning(
        f"Quasienergy {quasienergy:.8g} refolded by {shift} photon(s) toward "
        f"reference energy {reference_energy:.8g}"
    )
    folded = np.zeros_like(channels)
    if abs(shift) < channels.shape[0]:
        if shift > 0:
            folded[:-shift] = channels[shift:]
        else:
            folded[-shift:] = channels[:shift]
    if grid is not None:
        before = extended_c_product(channels, channels, grid)
        after = extended_c_product(folded, folded, grid)
        lost = abs(1 - after / before) if abs(before) > 0 else 0.0
        if lost > _EDGE_LOSS_TOL:
            _logger.warning(
                f"Refolding moved {lost:.2e} of the c-norm off the basis edge; "
                "widen the channel range"
            )
        if abs(after) > 0:
            folded = folded / np.sqrt(after)
    return quasienergy - shift * frequency, folded


# ------------------------------------------------------------------ #
# Eigensolve                                                           #
# ------------------------------------------------------------------ #


def _dense_eigenpairs(operator: sparse.csr_array) -> tuple[np.ndarray, np.ndarray]:
    try:
        return scipy.linalg.eig(operator.toarray())
    except scipy.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"Dense Floquet eigensolve failed: dimension={operator.shape[0]}: {exc}"
        ) from exc


def _shift_invert_eigenpairs(
    operator: sparse.csr_array,
    shift: complex,
    start: np.ndarray,
    options: SolverOptions,
) -> tuple[np.ndarray, np.ndarray]:
    dim = operator.shape[0]
    k = min(options.num_eigenpairs, dim - 2)
    shifted = sparse.csc_array(operator - shift * sparse.eye_array(dim))
    try:
        lu = spla.splu(shifted)
    except RuntimeError as exc:
        raise EigensolverError(
            f"Shifted Floquet operator is singular: dimension={dim}, "
            f"shift={shift:.10g}"
        ) from exc
    inverse = spla.LinearOperator(
        shape=(dim, dim), matvec=lu.solve, dtype=np.complex128
    )
    try:
        mu, vectors = spla.eigs(
            inverse, k=k, which="LM", v0=start, tol=options.arpack_tol
        )
    except spla.ArpackNoConvergence as exc:
        raise EigensolverError(
            f"Shift-invert iteration did not converge: dimension={dim}, "
            f"shift={shift:.10g}, converged={len(exc.eigenvalues)} of {k}"
        ) from exc
    return shift + 1 / mu, vectors


def solve_resonance(
    operator: sparse.csr_array,
    seed: FieldFreeState,
    basis: FloquetBasisSpec,
    drive: DriveField,
    options: SolverOptions | None = None,
    label: StateLabel = "other",
) -> FloquetEigenstate:
    """Find the Floquet eigenstate with the largest overlap with ``seed``.

    Args:
        operator: Extended Floquet operator from ``assemble_floquet_operator``.
        seed: Field-free eigenstate, embedded in channel n = 0.
        basis: Channel basis the operator was assembled on.
        drive: Drive the operator was assembled for.
        options: Solver options; defaults to ``SolverOptions()``.
        label: Label attached to the returned state.

    Returns:
        c-normalized Floquet eigenstate with classified dynamical symmetry.

    Raises:
        EigensolverError: On non-convergence, residual violation or a
            negative width.
        StateIdentificationError: If no eigenpair overlaps the seed above the
            configured floor.
        SymmetryBrokenError: If the identified state has no dynamical symmetry.
    """
    options = options or SolverOptions()
    grid = basis.grid
    dim = basis.dimension
    if operator.shape != (dim, dim):
        raise ValueError(
            f"Operator shape {operator.shape} does not match basis dimension {dim}"
        )
    embedded = _embed_seed(seed, basis)
    shift = complex(seed.energy) + options.shift_offset

    if dim < options.dense_limit:
        values, vectors = _dense_eigenpairs(operator)
    else:
        values, vectors = _shift_invert_eigenpairs(
            operator, shift, embedded.ravel(), options
        )

    candidates: list[tuple[float, complex, complex, np.ndarray]] = []
    for value, vector in zip(values, vectors.T, strict=True):
        channels = vector.reshape(basis.num_channels, grid.points)
        norm_sq = extended_c_product(channels, channels, grid)
        if abs(norm_sq) < 1e-300:
            continue
        channels = channels / np.sqrt(norm_sq)
        overlap = extended_c_product(embedded, channels, grid)
        if overlap.real < 0:
            channels, overlap = -channels, -overlap
        candidates.append((abs(overlap), complex(value), overlap, channels))
    candidates.sort(key=lambda c: (-c[0], abs(c[1] - shift)))
    if not candidates or candidates[0][0] < options.overlap_floor:
        best = ", ".join(f"E={c[1]:.8g} |overlap|={c[0]:.3f}" for c in candidates[:3])
        raise StateIdentificationError(
            f"State identification failed for seed E={seed.energy:.8g}: no "
            f"eigenpair above overlap floor {options.overlap_floor}; best "
            f"candidates: {best or 'none'}"
        )
    _logger.debug(
        "Resonance candidates: "
        + "; ".join(f"E={c[1]:.8g} |overlap|={c[0]:.4f}" for c in candidates)
    )
    overlap_mag, quasienergy, overlap, channels = candidates[0]

    flat = channels.ravel()
    residual = np.linalg.norm(operator @ flat - quasienergy * flat) / (
        spla.norm(operator, 1) * np.linalg.norm(flat)
    )
    if residual > options.residual_tol:
        raise EigensolverError(
            f"Eigenpair residual {residual:.2e} exceeds {options.residual_tol:.0e}: "
            f"dimension={dim}, shift={shift:.10g}, quasienergy={quasienergy:.10g}"
        )
    quasienergy, channels = fold_to_zone(
        quasienergy, channels, seed.energy.real, drive.frequency, grid
    )
    if -2 * quasienergy.imag < -_WIDTH_TOL:
        raise EigensolverError(
            f"Resonance at {quasienergy:.10g} has negative width "
            f"{-2 * quasienergy.imag:.3e}; check the scaling angle and grid"
        )
    symmetry, sym_residual = _classify(channels, basis.channel_min)
    _logger.info(
        f"{label}: dimension={dim}, shift={shift.real:.6g}, "
        f"quasienergy={quasienergy:.10g}, |overlap|={overlap_mag:.4f}, "
        f"symmetry={symmetry}"
    )
    return FloquetEigenstate(
        quasienergy=quasienergy,
        channels=channels,
        channel_min=basis.channel_min,
        grid=grid,
        drive=drive,
        symmetry=symmetry,
        symmetry_residual=sym_residual,
        target_overlap=overlap,
        label=label,
    )


def solve_targeted(
    atom: AtomModel,
    scaling: ComplexScalingConfig,
    drive: DriveField,
    basis: FloquetBasisSpec,
    seed_index: int = 0,
    options: SolverOptions | None = None,
) -> FloquetEigenstate:
    """Assemble the operator and solve for the resonance of one field-free state.

    Args:
        atom: Model atom parameters.
        scaling: Complex scaling angle.
        drive: cw drive.
        basis: Fourier channel basis (carries the grid).
        seed_index: 0 targets FLg (ground state), 1 targets FLe.
        options: Solver options.

    Returns:
        The targeted Floquet eigenstate.
    """
    options = options or SolverOptions()
    seeds = solve_field_free(atom, basis.grid, scaling, count=seed_index + 1)
    seed = seeds[seed_index]
    operator = assemble_floquet_operator(
        atom, basis.grid, scaling, drive, basis, options.memory_budget_mb
    )
    label: StateLabel
    match seed_index:
        case 0:
            label = "FLg"
        case 1:
            label = "FLe"
        case _:
            label = "other"
    return solve_resonance(operator, seed, basis, drive, options, label=label)


def theta_trajectory(
    atom: AtomModel,
    grid: SpatialGrid,
    drive: DriveField,
    basis: FloquetBasisSpec,
    thetas: Sequence[float],
    seed_index: int = 0,
    options: SolverOptions | None = None,
    threads: int = 1,
) -> list[tuple[float, complex]]:
    """Track the targeted quasienergy across scaling angles.

    Args:
        atom: Model atom parameters.
        grid: Spatial grid; must match ``basis.grid``.
        drive: cw drive.
        basis: Fourier channel basis.
        thetas: Strictly increasing angles inside (0, pi / 4).
        seed_index: Field-free state the resonance is seeded from.
        options: Solver options.
        threads: Number of angles solved concurrently.

    Returns:
        ``(theta, quasienergy)`` pairs in input order.

    Raises:
        ValueError: If ``thetas`` is empty, not strictly increasing or out of
            range.
    """
    angles = np.asarray(thetas, dtype=float)
    if angles.size == 0:
        raise ValueError("theta_trajectory needs at least one angle")
    if np.any(np.diff(angles) <= 0):
        raise ValueError(f"Angles must be strictly increasing, got {list(angles)}")
    if angles[0] <= 0 or angles[-1] >= np.pi / 4:
        raise ValueError("Angles must lie strictly inside (0, pi/4)")
    if grid != basis.grid:
        raise ValueError("Floquet basis and atom grid differ")

    def _solve(theta: float) -> tuple[float, complex]:
        state = solve_targeted(
            atom, ComplexScalingConfig(theta=theta), drive, basis, seed_index, options
        )
        return theta, state.quasienergy

    with ThreadPoolExecutor(max_workers=threads) as executor:
        return list(executor.map(_solve, angles.tolist()))
