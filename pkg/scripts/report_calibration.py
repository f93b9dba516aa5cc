r"""Report the cavity couplings that give the published side-harmonic shifts.

For the calibrated model atom, finds eps_cav at omega_cav = 6.45 omega0 giving
side-harmonic shifts of 1.0 and 0.5 and compares them with the published
couplings, together with the shift this model gives at each published coupling.
The deviation is reported, not gated.

Usage::
    uv run scripts/report_calibration.py \\
        [--config run.yaml] [--ratio 6.45] \\
        [--no-cache] [--verbose]
"""

# /// script
# requires-python = ">=3.12"
# dependencies = [
#     "cavity-hhg",
# ]
# ///

from __future__ import annotations

import argparse
import logging
from pathlib import Path

from cavity_hhg.cavity import (
    CavityConfig,
    coupling_dipole,
    find_coupling_for_shift,
    polariton_solve,
)
from cavity_hhg.config import load_config
from cavity_hhg.core import CavityHHG
from cavity_hhg.errors import CalibrationError

_logger = logging.getLogger("report_calibration")

PUBLISHED_COUPLINGS: dict[float, float] = {1.0: 0.229, 0.5: 0.235}


def main() -> None:
    """CLI entry point: print one line per target shift."""
    parser = argparse.ArgumentParser(
        description="Recover eps_cav for the published side-harmonic shifts"
    )
    parser.add_argument("--config", type=Path, help="YAML run configuration")
    parser.add_argument(
        "--ratio", type=float, default=6.45, help="omega_cav / omega0 (default: 6.45)"
    )
    parser.add_argument(
        "--no-cache", action="store_true", help="Do not read or write cached states"
    )
    parser.add_argument(
        "--verbose", "-v", action="store_true", help="Enable INFO logging"
    )
    args = parser.parse_args()

    config = load_config(args.config)
    run = CavityHHG(config, use_cache=not args.no_cache, verbose=int(args.verbose))
    cavity_frequency = args.ratio * config.drive.frequency
    print(f"softcore_depth = {run.atom.softcore_depth:.6f}")
    print(f"FLg = {run.flg.quasienergy:.8g}, FLe = {run.fle.quasienergy:.8g}")
    d_ge = coupling_dipole(run.flg, run.fle)
    print(
        f"{'shift':>6} {'eps_cav':>10} {'published':>10} {'deviation':>10} "
        f"{'at_pub':>10}"
    )
    for shift, published in PUBLISHED_COUPLINGS.items():
        pair = polariton_solve(
            run.flg.quasienergy,
            run.fle.quasienergy,
            CavityConfig(frequency=cavity_frequency, coupling=published),
            d_ge,
            config.drive.frequency,
        )
        try:
            eps = find_coupling_for_shift(
                shift, cavity_frequency, run.flg, run.fle
            )
        except CalibrationError as exc:
            _logger.warning(f"Shift {shift}: {exc}")
            print(
                f"{shift:>6} {'-':>10} {published:>10.3f} {'-':>10} "
                f"{pair.shift:>10.4f}"
            )
            continue
        print(
            f"{shift:>6} {eps:>10.5f} {published:>10.3f} {eps - published:>+10.5f} "
            f"{pair.shift:>10.4f}"
        )


if __name__ == "__main__":
    main()
