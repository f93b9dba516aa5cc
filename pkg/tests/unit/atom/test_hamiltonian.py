"""Tests for the field-free model atom."""

from __future__ import annotations

import numpy as np
import pytest
from pydantic import ValidationError

from cavity_hhg.atom import (
    AtomModel,
    ComplexScalingConfig,
    SpatialGrid,
    build_potential,
    c_product,
    calibrate_depth,
    hamiltonian,
    kinetic_operator,
    parity_residuals,
    solve_field_free,
)
from cavity_hhg.errors import CalibrationError

UNSCALED = ComplexScalingConfig(theta=0.0)


class TestModels:
    """Tests for atom configuration models."""

    def test_grid_symmetric(self) -> None:
        """Test grid points come in mirror pairs about x = 0."""
        grid = SpatialGrid(extent=10.0, points=11)
        np.testing.assert_allclose(grid.coordinates, -grid.coordinates[::-1])
        assert grid.spacing == pytest.approx(2.0)
        assert grid.coordinates[0] == pytest.approx(-10.0)

    def test_scaling_angle_bounds(self) -> None:
        """Test angles at or above pi/4 are rejected."""
        with pytest.raises(ValidationError):
            ComplexScalingConfig(theta=np.pi / 4)
        with pytest.raises(ValidationError):
            ComplexScalingConfig(theta=-0.1)

    def test_atom_rejects_unknown_keys(self) -> None:
        """Test model atoms forbid extra fields."""
        with pytest.raises(ValidationError):
            AtomModel(depth=1.0)  # type: ignore[call-arg]


class TestOperators:
    """Tests for the discretized Hamiltonian."""

    def test_potential_real_without_scaling(self) -> None:
        """Test theta = 0 samples the real soft-core potential."""
        grid = SpatialGrid(extent=5.0, points=11)
        potential = build_potential(AtomModel(), grid, UNSCALED)
        np.testing.assert_array_equal(potential.imag, 0.0)
        assert potential.real.min() == pytest.approx(-1 / np.sqrt(2.0))

    def test_potential_scaled(self) -> None:
        """Test the potential is evaluated at x * exp(i theta)."""
        grid = SpatialGrid(extent=5.0, points=11)
        scaling = ComplexScalingConfig(theta=0.2)
        x = grid.coordinates * np.exp(0.2j)
        expected = -1.0 / np.sqrt(x**2 + 2.0)
        np.testing.assert_allclose(
            build_potential(AtomModel(), grid, scaling), expected
        )

    def test_kinetic_complex_symmetric(self) -> None:
        """Test the kinetic matrix equals its transpose (not its adjoint)."""
        grid = SpatialGrid(extent=5.0, points=20)
        kinetic = kinetic_operator(grid, ComplexScalingConfig(theta=0.3)).toarray()
        np.testing.assert_array_equal(kinetic, kinetic.T)
        assert not np.allclose(kinetic, kinetic.conj().T)

    def test_kinetic_on_quadratic(self) -> None:
        """Test the stencil differentiates x**2 exactly away from the edges."""
        grid = SpatialGrid(extent=5.0, points=41)
        kinetic = kinetic_operator(grid, UNSCALED)
        values = kinetic @ grid.coordinates**2
        np.testing.assert_allclose(values[2:-2].real, -1.0, rtol=1e-10)

    def test_hamiltonian_shape(self) -> None:
        """Test the Hamiltonian is square on the grid."""
        grid = SpatialGrid(extent=5.0, points=30)
        assert hamiltonian(AtomModel(), grid, UNSCALED).shape == (30, 30)


class TestCProduct:
    """Tests for the c-product."""

    def test_no_conjugation(self) -> None:
        """Test the c-product of i with itself is -length."""
        grid = SpatialGrid(extent=1.0, points=11)
        f = np.full(11, 1j)
        assert c_product(f, f, grid) == pytest.approx(-2.0)

    def test_shape_mismatch(self) -> None:
        """Test mismatched operands raise ValueError."""
        grid = SpatialGrid(extent=1.0, points=11)
        with pytest.raises(ValueError, match="share the grid"):
            c_product(np.ones(11), np.ones(10), grid)

    def test_parity_residuals(self) -> None:
        """Test even and odd functions give zero residual in their sector."""
        x = np.linspace(-1, 1, 21)
        assert parity_residuals(x**2) == pytest.approx((0.0, 2.0))
        assert parity_residuals(x) == pytest.approx((2.0, 0.0))
        assert parity_residuals(np.zeros(5)) == (0.0, 0.0)


class TestSolveFieldFree:
    """Tests for field-free eigenstates."""

    def test_ground_energy(self) -> None:
        """Test the width-2 soft-core ground state lies at about -0.5."""
        grid = SpatialGrid(extent=40.0, points=400)
        ground = solve_field_free(AtomModel(), grid, UNSCALED, count=1)[0]
        assert ground.energy.real == pytest.approx(-0.5, abs=5e-3)
        assert ground.parity == "even"

    def test_parity_alternates(self, small_grid: SpatialGrid) -> None:
        """Test the two lowest states are even then odd."""
        states = solve_field_free(
            AtomModel(), small_grid, ComplexScalingConfig(theta=0.15), count=2
        )
        assert [s.parity for s in states] == ["even", "odd"]
        assert states[0].energy.real < states[1].energy.real
        assert all(s.parity_residual < 1e-8 for s in states)

    def test_c_normalized(self, small_grid: SpatialGrid) -> None:
        """Test states are c-normalized with a fixed sign."""
        state = solve_field_free(
            AtomModel(), small_grid, ComplexScalingConfig(theta=0.15), count=1
        )[0]
        psi = state.wavefunction
        assert c_product(psi, psi, small_grid) == pytest.approx(1.0, abs=1e-10)
        half = psi[small_grid.points // 2 :]
        assert half[np.argmax(np.abs(half))].real >= 0

    def test_scaling_preserves_bound_energy(self) -> None:
        """Test complex scaling leaves the bound-state energy nearly real."""
        grid = SpatialGrid(extent=40.0, points=400)
        plain = solve_field_free(AtomModel(), grid, UNSCALED, count=1)[0]
        scaled = solve_field_free(
            AtomModel(), grid, ComplexScalingConfig(theta=0.15), count=1
        )[0]
        assert scaled.energy == pytest.approx(plain.energy, abs=1e-4)

    def test_count_out_of_range(self, small_grid: SpatialGrid) -> None:
        """Test count outside [1, points] raises ValueError."""
        with pytest.raises(ValueError, match="count must lie"):
            solve_field_free(AtomModel(), small_grid, UNSCALED, count=0)


class TestCalibrateDepth:
    """Tests for depth calibration."""

    def test_no_target(self, small_grid: SpatialGrid) -> None:
        """Test a model without target is returned unchanged."""
        model = AtomModel()
        assert calibrate_depth(model, small_grid) is model

    def test_reaches_target(self, small_grid: SpatialGrid) -> None:
        """Test the calibrated depth reproduces the target ground energy."""
        model = AtomModel(target_ground_energy=-0.4458)
        calibrated = calibrate_depth(model, small_grid)
        ground = solve_field_free(calibrated, small_grid, UNSCALED, count=1)[0]
        assert ground.energy.real == pytest.approx(-0.4458, abs=1e-4)
        assert calibrated.softcore_width == model.softcore_width

    def test_unreachable_tolerance(self, small_grid: SpatialGrid) -> None:
        """Test a bracket that cannot grow enough raises CalibrationError."""
        model = AtomModel(target_ground_energy=-50.0)
        with pytest.raises(CalibrationError, match="bracket"):
            calibrate_depth(model, small_grid, max_expansions=0)
