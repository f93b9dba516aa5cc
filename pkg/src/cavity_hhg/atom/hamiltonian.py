"""Field-free Hamiltonian of the model atom on a complex-scaled grid.

The kinetic energy is discretized with fourth-order central finite differences
and Dirichlet boundaries, so the Hamiltonian is a pentadiagonal complex-symmetric
sparse matrix. Wavefunctions are normalized with the c-product (no complex
conjugation), the natural bilinear form for complex-scaled operators.
"""

from __future__ import annotations

import logging

import numpy as np
import scipy.linalg
from scipy import integrate, optimize, sparse
from scipy.sparse import linalg as spla

from cavity_hhg.atom.models import (
    AtomModel,
    ComplexScalingConfig,
    FieldFreeState,
    SpatialGrid,
)
from cavity_hhg.errors import CalibrationError, EigensolverError

_logger = logging.getLogger(__name__)

__all__ = [
    "build_potential",
    "c_product",
    "calibrate_depth",
    "hamiltonian",
    "kinetic_operator",
    "parity_residuals",
    "solve_field_free",
]

# Second-derivative stencil, offsets -2..2, in units of 1 / h**2
_STENCIL = np.array([-1 / 12, 4 / 3, -5 / 2, 4 / 3, -1 / 12])
_PARITY_TOL = 1e-8
_DENSE_REAL_LIMIT = 4096
_DENSE_COMPLEX_LIMIT = 2048
_UNSCALED = ComplexScalingConfig(theta=0.0)


def build_potential(
    model: AtomModel, grid: SpatialGrid, scaling: ComplexScalingConfig
) -> np.ndarray:
    """Sample the soft-core potential at the complex-scaled coordinate.

    Args:
        model: Model atom parameters.
        grid: Spatial grid.
        scaling: Complex scaling angle.

    Returns:
        Complex array V(x * exp(i * theta)); purely real for theta = 0.
    """
    x = grid.coordinates
    if scaling.theta == 0:
        return (-model.softcore_depth / np.sqrt(x**2 + model.softcore_width)).astype(
            np.complex128
        )
    x_theta_sq = x**2 * np.exp(2j * scaling.theta)
    return -model.softcore_depth / np.sqrt(x_theta_sq + model.softcore_width)


def kinetic_operator(
    grid: SpatialGrid, scaling: ComplexScalingConfig
) -> sparse.csr_array:
    """Build -1/2 d^2/dx_theta^2 as a sparse pentadiagonal matrix.

    Args:
        grid: Spatial grid.
        scaling: Complex scaling angle; the operator carries exp(-2i theta).

    Returns:
        Complex sparse kinetic energy matrix.
    """
    prefactor = -0.5 * np.exp(-2j * scaling.theta) / grid.spacing**2
    offsets = np.arange(-2, 3)
    diagonals = [
        np.full(grid.points - abs(k), prefactor * c)
        for k, c in zip(offsets, _STENCIL, strict=True)
    ]
    return sparse.csr_array(
        sparse.diags_array(diagonals, offsets=offsets, shape=(grid.points,) * 2)
    )


def hamiltonian(
    model: AtomModel, grid: SpatialGrid, scaling: ComplexScalingConfig
) -> sparse.csr_array:
    """Return the complex-scaled field-free Hamiltonian T(theta) + V(x_theta)."""
    potential = sparse.diags_array(build_potential(model, grid, scaling))
    return sparse.csr_array(kinetic_operator(grid, scaling) + potential)


def c_product(f: np.ndarray, g: np.ndarray, grid: SpatialGrid) -> complex:
    """Symmetric bilinear form int f(x) g(x) dx, without complex conjugation.

    Args:
        f: Samples on ``grid``.
        g: Samples on ``grid``.
        grid: Grid both arguments are sampled on.

    Returns:
        Trapezoid-rule value of the integral.

    Raises:
        ValueError: If the sample counts disagree with each other or the grid.
    """
    f = np.asarray(f)
    g = np.asarray(g)
    if f.shape != g.shape or f.shape[-1] != grid.points:
        raise ValueError(
            f"c-product operands must share the grid: got shapes {f.shape} and "
            f"{g.shape} for {grid.points} grid points"
        )
    return complex(integrate.trapezoid(f * g, dx=grid.spacing))


def parity_residuals(wavefunction: np.ndarray) -> tuple[float, float]:
    """Return relative deviations (even, odd) from exact parity under x -> -x."""
    norm = np.linalg.norm(wavefunction)
    if norm == 0:
        return 0.0, 0.0
    mirrored = wavefunction[::-1]
    return (
        float(np.linalg.norm(wavefunction - mirrored) / norm),
        float(np.linalg.norm(wavefunction + mirrored) / norm),
    )


def _c_normalize(vector: np.ndarray, grid: SpatialGrid) -> np.ndarray:
    norm_sq = c_product(vector, vector, grid)
    if abs(norm_sq) < 1e-300:
        raise EigensolverError(
            "Eigenvector is self-orthogonal under the c-product and cannot be "
            "normalized",
            module="atom",
        )
    vector = vector / np.sqrt(norm_sq)
    # c-normalization fixes the vector up to a sign
    half = vector[grid.points // 2 :]
    anchor = half[np.argmax(np.abs(half))]
    return -vector if anchor.real < 0 else vector


def _eigenpairs(
    operator: sparse.csr_array, count: int, theta: float, shift: float
) -> tuple[np.ndarray, np.ndarray]:
    size = operator.shape[0]
    try:
        if theta == 0 and size <= _DENSE_REAL_LIMIT:
            return scipy.linalg.eigh(
                operator.toarray().real, subset_by_index=[0, count - 1]
            )
        if theta == 0:
            return spla.eigsh(operator.real, k=count, sigma=shift, which="LM")
        if size <= _DENSE_COMPLEX_LIMIT:
            return scipy.linalg.eig(operator.toarray())
        return spla.eigs(operator, k=count, sigma=shift, which="LM")
    except spla.ArpackNoConvergence as exc:
        raise EigensolverError(
            f"Field-free eigensolve did not converge: dimension={size}, "
            f"shift={shift:.6g}, converged={len(exc.eigenvalues)} of {count}",
            module="atom",
        ) from exc
    except scipy.linalg.LinAlgError as exc:
        raise EigensolverError(
            f"Field-free eigensolve failed: dimension={size}: {exc}", module="atom"
        ) from exc


def solve_field_free(
    model: AtomModel,
    grid: SpatialGrid,
    scaling: ComplexScalingConfig,
    count: int = 2,
) -> list[FieldFreeState]:
    """Compute the lowest field-free eigenstates.

    Args:
        model: Model atom parameters.
        grid: Spatial grid.
        scaling: Complex scaling angle.
        count: Number of eigenstates to return.

    Returns:
        ``count`` c-normalized states ordered by the real part of the energy,
        ties broken by ascending magnitude of the imaginary part.

    Raises:
        ValueError: If ``count`` is not within [1, grid.points].
        EigensolverError: If the eigensolver fails or does not converge.
    """
    if not 1 <= count <= grid.points:
        raise ValueError(f"count must lie in [1, {grid.points}], got {count}")
    operator = hamiltonian(model, grid, scaling)
    shift = float(build_potential(model, grid, scaling).real.min())
    values, vectors = _eigenpairs(operator, count, scaling.theta, shift)

    order = sorted(
        range(len(values)), key=lambda i: (values[i].real, abs(values[i].imag))
    )
    states = []
    for idx in order[:count]:
        psi = _c_normalize(np.asarray(vectors[:, idx], dtype=np.complex128), grid)
        even, odd = parity_residuals(psi)
        residual = min(even, odd)
        if residual > _PARITY_TOL:
            _logger.warning(
                f"Field-free state at E={complex(values[idx]):.8g} has parity "
                f"residual {residual:.2e}"
            )
        states.append(
            FieldFreeState(
                energy=complex(values[idx]),
                wavefunction=psi,
                parity="even" if even <= odd else "odd",
                parity_residual=residual,
                grid=grid,
            )
        )
    _logger.debug(
        "Field-free energies: " + ", ".join(f"{s.energy:.8g}" for s in states)
    )
    return states


def calibrate_depth(
    model: AtomModel, grid: SpatialGrid, max_expansions: int = 30
) -> AtomModel:
    """Adjust the potential depth so the ground energy matches the target.

    The softening width is held fixed; the depth is found by bracketing root
    finding on the unscaled grid Hamiltonian.

    Args:
        model: Model atom with ``target_ground_energy`` set.
        grid: Spatial grid used for the calibration.
        max_expansions: Number of bracket doublings attempted.

    Returns:
        Copy of ``model`` with the calibrated depth, or ``model`` unchanged if
        no target is set.

    Raises:
        CalibrationError: If no bracket is found or the tolerance is not met.
    """
    target = model.target_ground_energy
    if target is None:
        return model

    def _mismatch(depth: float) -> float:
        trial = model.model_copy(update={"softcore_depth": depth})
        ground = solve_field_free(trial, grid, _UNSCALED, count=1)[0]
        return ground.energy.real - target

    # The ground energy always lies above the potential minimum -depth / sqrt(a)
    low = abs(target) * np.sqrt(model.softcore_width)
    high = 2 * low
    for _ in range(max_expansions):
        if _mismatch(high) < 0:
            break
        low, high = high, 2 * high
    else:
        raise CalibrationError(
            f"Could not bracket a depth reaching ground energy {target} "
            f"(last tried depth {high:.6g})"
        )

    depth = optimize.brentq(_mismatch, low, high, xtol=1e-12)
    deviation = abs(_mismatch(depth))
    if deviation > model.calibration_tolerance:
        raise CalibrationError(
            f"Calibrated depth {depth:.8g} misses target {target} by {deviation:.2e}"
        )
    _logger.info(
        f"Calibrated soft-core depth {depth:.8g} (width {model.softcore_width}) "
        f"for ground energy {target}"
    )
    return model.model_copy(update={"softcore_depth": float(depth)})
