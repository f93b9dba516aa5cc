"""Core CavityHHG class.

Thin orchestrator that wires the validated run configuration through the atom,
Floquet, spectrum, cavity, pulse and oracle modules and writes the artifacts of
each command.
"""

from __future__ import annotations

import logging
from functools import cached_property
from pathlib import Path
from typing import TYPE_CHECKING, Any, Literal

from cavity_hhg.atom import calibrate_depth, solve_field_free
from cavity_hhg.cavity import (
    CavityChain,
    CavityConfig,
    SpectralFilter,
    apply_filter,
    cavity_spectrum,
    chain_spectrum,
    coupling_dipole,
    find_coupling_for_shift,
    polariton_solve,
    sweep_total_intensity,
)
from cavity_hhg.config import RunConfig, load_config, load_panel
from cavity_hhg.errors import ConfigError
from cavity_hhg.floquet import (
    EigenstateCache,
    FloquetEigenstate,
    solve_targeted,
    state_key,
    theta_trajectory,
)
from cavity_hhg.io import write_json, write_pulse, write_spectrum, write_sweep
from cavity_hhg.oracle import propagate_and_spectrum
from cavity_hhg.pulse import dominant_period, measure_spacing, synthesize_train
from cavity_hhg.runtime import setup_runtime
from cavity_hhg.spectrum import HarmonicSpectrum, total_intensity
from cavity_hhg.spectrum import spectrum as harmonic_spectrum

if TYPE_CHECKING:
    from cavity_hhg.atom import AtomModel
    from cavity_hhg.cavity import PolaritonPair

_logger = logging.getLogger(__name__)

__all__ = ["COMMANDS", "CavityHHG", "Command", "reproduce", "run_command"]

Command = Literal["eigen", "spectrum", "cavity", "chain", "sweep", "pulse", "oracle"]
COMMANDS: tuple[Command, ...] = (
    "eigen",
    "spectrum",
    "cavity",
    "chain",
    "sweep",
    "pulse",
    "oracle",
)


def _complex(value: complex) -> dict[str, float]:
    return {"re": value.real, "im": value.imag}


def _state_summary(state: FloquetEigenstate) -> dict[str, Any]:
    return {
        "label": state.label,
        "quasienergy": _complex(state.quasienergy),
        "width": state.width,
        "symmetry": state.symmetry,
        "symmetry_residual": state.symmetry_residual,
        "target_overlap": _complex(state.target_overlap),
        "channel_min": state.channel_min,
        "channel_max": state.channel_max,
    }


def _pair_summary(pair: PolaritonPair) -> dict[str, Any]:
    weight_g, weight_e, weight_side = pair.weights()
    return {
        "cavity_frequency": pair.cavity.frequency,
        "coupling": pair.cavity.coupling,
        "phase": pair.cavity.phase,
        "dipole": _complex(pair.dipole),
        "detuning": _complex(pair.detuning),
        "rabi": _complex(pair.rabi),
        "splitting": _complex(pair.splitting),
        "shift": pair.shift,
        "linewidth_shift": pair.linewidth_shift,
        "weights": {
            "flg": _complex(weight_g),
            "fle": _complex(weight_e),
            "side": _complex(weight_side),
        },
    }


class CavityHHG:
    """Configured simulation of cavity-modified high-harmonic generation.

    The calibrated atom and the FLg/FLe resonances are computed on first use and
    reused by every command; resonances also go through the eigenstate cache.
    """

    def __init__(
        self,
        config: RunConfig,
        *,
        use_cache: bool = True,
        verbose: int = 0,
    ) -> None:
        """Initialize the run.

        Args:
            config: Validated run configuration.
            use_cache: Read and write solved resonances through the cache.
            verbose: Verbosity level (0=WARNING, 1=INFO, 2+=DEBUG)
        """
        self.config = config
        self.runtime_ctx = setup_runtime(threads=config.threads, verbose=verbose)
        self.digest = config.digest()
        self.cache = (
            EigenstateCache(config.cache.directory)
            if use_cache and config.cache.enabled
            else None
        )

    # ------------------------------------------------------------------ #
    # Shared inputs                                                        #
    # ------------------------------------------------------------------ #

    @cached_property
    def atom(self) -> AtomModel:
        """Atom with its depth calibrated to the target ground energy."""
        return calibrate_depth(self.config.atom, self.config.grid)

    def resonance(self, seed_index: int) -> FloquetEigenstate:
        """Floquet resonance seeded from field-free state ``seed_index``."""
        cfg = self.config
        key = state_key(
            atom=self.atom,
            scaling=cfg.scaling,
            drive=cfg.drive,
            basis=cfg.floquet_basis,
            solver=cfg.solver,
            seed_index=seed_index,
        )
        if self.cache is not None and (state := self.cache.get(key)) is not None:
            return state
        state = solve_targeted(
            self.atom, cfg.scaling, cfg.drive, cfg.floquet_basis, seed_index, cfg.solver
        )
        if self.cache is not None:
            self.cache.put(key, state)
        return state

    @cached_property
    def flg(self) -> FloquetEigenstate:
        """Resonance of the field-free ground state."""
        return self.resonance(0)

    @cached_property
    def fle(self) -> FloquetEigenstate:
        """Resonance of the first excited field-free state."""
        return self.resonance(1)

    @cached_property
    def cavities(self) -> tuple[CavityConfig, ...]:
        """Configured cavities, calibrating any given by target shift."""
        omega0 = self.config.drive.frequency
        resolved = []
        for spec in self.config.cavities:
            coupling = spec.coupling
            if spec.target_shift is not None:
                coupling = find_coupling_for_shift(
                    spec.target_shift,
                    spec.resolve_frequency(omega0),
                    self.flg,
                    self.fle,
                )
            resolved.append(spec.to_cavity(omega0, coupling))
        return tuple(resolved)

    @cached_property
    def polaritons(self) -> tuple[PolaritonPair, ...]:
        """Polariton pair of every configured cavity, in configuration order."""
        if not self.cavities:
            return ()
        d_ge = coupling_dipole(self.flg, self.fle)
        return tuple(
            polariton_solve(
                self.flg.quasienergy,
                self.fle.quasienergy,
                cavity,
                d_ge,
                self.config.drive.frequency,
            )
            for cavity in self.cavities
        )

    def _require_cavities(self, command: str) -> tuple[CavityConfig, ...]:
        if not self.cavities:
            raise ConfigError(f"Command '{command}' needs at least one cavity")
        return self.cavities

    def _out(self, out: Path | None) -> Path:
        return Path(out) if out is not None else self.config.output_dir

    # ------------------------------------------------------------------ #
    # Spectra                                                              #
    # ------------------------------------------------------------------ #

    def free_spectrum(self) -> HarmonicSpectrum:
        """No-cavity harmonic spectrum of FLg."""
        return harmonic_spectrum(self.flg, self.config.harmonics.max_order)

    def composed_spectrum(self) -> HarmonicSpectrum:
        """Coherent spectrum of every configured cavity."""
        chain = CavityChain(
            cavities=self._require_cavities("chain"), flg=self.flg, fle=self.fle
        )
        return chain_spectrum(
            chain, self.config.harmonics.max_order, self.runtime_ctx.threads
        )

    # ------------------------------------------------------------------ #
    # Commands                                                             #
    # ------------------------------------------------------------------ #

    def eigen(self, out: Path | None = None) -> list[Path]:
        """Solve FLg, FLe and the FLg theta trajectory; write ``eigen.json``."""
        cfg = self.config
        field_free = solve_field_free(self.atom, cfg.grid, cfg.scaling, count=2)
        trajectory = []
        if cfg.trajectory_thetas:
            trajectory = theta_trajectory(
                self.atom,
                cfg.grid,
                cfg.drive,
                cfg.floquet_basis,
                cfg.trajectory_thetas,
                seed_index=0,
                options=cfg.solver,
                threads=self.runtime_ctx.threads,
            )
        data = {
            "softcore_depth": self.atom.softcore_depth,
            "field_free": [
                {"energy": _complex(s.energy), "parity": s.parity} for s in field_free
            ],
            "states": [_state_summary(self.flg), _state_summary(self.fle)],
            "trajectory": [
                {"theta": theta, "quasienergy": _complex(energy)}
                for theta, energy in trajectory
            ],
        }
        return [write_json(self._out(out) / "eigen.json", self.digest, "eigen", data)]

    def spectrum(self, out: Path | None = None) -> list[Path]:
        """Write the no-cavity FLg spectrum."""
        spec = self.free_spectrum()
        extra = {
            "total_intensity": total_intensity(spec),
            "flg": _state_summary(self.flg),
        }
        return list(
            write_spectrum(self._out(out) / "spectrum_flg", spec, self.digest, extra)
        )

    def cavity(self, out: Path | None = None) -> list[Path]:
        """Write the composed spectrum of the first configured cavity."""
        self._require_cavities("cavity")
        max_order = self.config.harmonics.max_order
        pair = self.polaritons[0]
        result = cavity_spectrum(
            pair,
            harmonic_spectrum(self.flg, max_order),
            harmonic_spectrum(self.fle, max_order),
            max_order,
        )
        extra = {
            "total_intensity": total_intensity(result.composed),
            "polariton": _pair_summary(pair),
        }
        return list(
            write_spectrum(
                self._out(out) / "spectrum_cavity", result.composed, self.digest, extra
            )
        )

    def chain(self, out: Path | None = None) -> list[Path]:
        """Write the coherent spectrum of all configured cavities."""
        spec = self.composed_spectrum()
        extra = {
            "total_intensity": total_intensity(spec),
            "polaritons": [_pair_summary(p) for p in self.polaritons],
        }
        return list(
            write_spectrum(self._out(out) / "spectrum_chain", spec, self.digest, extra)
        )

    def sweep(self, out: Path | None = None) -> list[Path]:
        """Write the total-intensity sweep over (omega_cav, eps_cav)."""
        sweep = self.config.sweep
        omega0 = self.config.drive.frequency
        # Frequency is replaced at every point; the template carries the phase
        template = CavityConfig(
            frequency=sweep.omega_ratios[0] * omega0, coupling=0.0, phase=sweep.phase
        )
        rows = sweep_total_intensity(
            template,
            sweep.eps_values,
            sweep.omega_ratios,
            self.flg,
            self.fle,
            self.config.harmonics.max_order,
            self.runtime_ctx.threads,
        )
        failed = sum(row.status != "ok" for row in rows)
        if failed:
            _logger.warning(f"{failed} of {len(rows)} sweep points failed")
        return [write_sweep(self._out(out) / "sweep", rows, self.digest)]

    def pulse(self, out: Path | None = None) -> list[Path]:
        """Synthesize the pulse train of the chain (or no-cavity) spectrum."""
        cfg = self.config.pulse
        spec = self.composed_spectrum() if self.cavities else self.free_spectrum()
        if cfg.block_odd:
            spec = apply_filter(
                spec, SpectralFilter.odd_harmonics(self.config.harmonics.max_order)
            )
        train = synthesize_train(
            spec,
            cfg.window_min_order,
            cfg.samples_per_period,
            cfg.num_periods,
            keep_phase=cfg.keep_phase,
        )
        spacing, deviation = measure_spacing(train)
        extra = {
            "spacing_over_T0": spacing,
            "spacing_deviation_over_T0": deviation,
            "dominant_period_over_T0": dominant_period(train),
            "polaritons": [_pair_summary(p) for p in self.polaritons],
        }
        _logger.info(
            f"Pulse spacing {spacing:.4g} T0, dominant period "
            f"{extra['dominant_period_over_T0']:.4g} T0"
        )
        return list(write_pulse(self._out(out) / "pulse", train, self.digest, extra))

    def oracle(self, out: Path | None = None) -> list[Path]:
        """Propagate in time and compare odd-harmonic peaks against FLg."""
        cfg = self.config
        tdse = propagate_and_spectrum(self.atom, cfg.grid, cfg.drive, cfg.propagation)
        floquet = self.free_spectrum()
        top = int(min(cfg.propagation.max_order, cfg.harmonics.max_order))
        comparison = [
            {
                "order": m,
                "floquet": abs(floquet.amplitude_at(m)),
                "tdse_peak": tdse.peak_near(m),
            }
            for m in range(1, top + 1, 2)
        ]
        return list(
            write_spectrum(
                self._out(out) / "spectrum_tdse",
                tdse,
                self.digest,
                {"odd_peaks": comparison},
            )
        )

    def run(self, command: Command, out: Path | None = None) -> list[Path]:
        """Run one command and return the artifact paths it wrote."""
        match command:
            case "eigen":
                return self.eigen(out)
            case "spectrum":
                return self.spectrum(out)
            case "cavity":
                return self.cavity(out)
            case "chain":
                return self.chain(out)
            case "sweep":
                return self.sweep(out)
            case "pulse":
                return self.pulse(out)
            case "oracle":
                return self.oracle(out)
            case _:
                raise ConfigError(f"Unknown command '{command}'")


def run_command(
    command: Command,
    config: RunConfig,
    out: Path | None = None,
    *,
    use_cache: bool = True,
    verbose: int = 0,
) -> list[Path]:
    """Run ``command`` with ``config``; artifacts go to ``out`` or output_dir."""
    return CavityHHG(config, use_cache=use_cache, verbose=verbose).run(command, out)


def reproduce(
    panel: str,
    path: Path | str | None = None,
    overrides: dict[str, Any] | None = None,
    out: Path | None = None,
    *,
    use_cache: bool = True,
    verbose: int = 0,
) -> list[Path]:
    """Reproduce a bundled figure panel into ``<out>/<panel>``.

    Args:
        panel: Figure panel name (``a``, ``b1`` ... ``d2``).
        path: Optional YAML configuration applied beneath the panel overrides.
        overrides: Optional mapping applied after the panel overrides.
        out: Output root; defaults to the configured output directory.
        use_cache: Read and write solved resonances through the cache.
        verbose: Verbosity level.

    Returns:
        Artifact paths written.
    """
    figure = load_panel(panel)
    config = load_config(path, panel=panel, overrides=overrides)
    run = CavityHHG(config, use_cache=use_cache, verbose=verbose)
    _logger.info(f"Reproducing panel {panel}: {figure.description}")
    for note in figure.notes:
        _logger.info(f"[{panel}] {note}")
    root = Path(out) if out is not None else config.output_dir
    return run.run(figure.command, root / panel)
