"""Command-line front end.

Usage::

    cavity-hhg spectrum --config run.yaml --out results/ -v
    cavity-hhg reproduce b2 --threads auto
    cavity-hhg chain --seed-figure d1 --no-cache

Exit codes: 0 on success, 2 for configuration errors, 3 for numerical failures.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import TYPE_CHECKING, Any

from cavity_hhg.config import load_config
from cavity_hhg.core import COMMANDS, reproduce, run_command
from cavity_hhg.errors import CavityHHGError, NumericalError
from cavity_hhg.resources import CAVITY_HHG_RESOURCES
from cavity_hhg.runtime import resolve_threads

if TYPE_CHECKING:
    from collections.abc import Sequence

__all__ = ["EXIT_CONFIG", "EXIT_NUMERICAL", "EXIT_OK", "build_parser", "main"]

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERICAL = 3


def _threads(value: str) -> int:
    try:
        return resolve_threads("auto" if value == "auto" else int(value))
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    """Argument parser for the ``cavity-hhg`` console script."""
    panels = sorted(CAVITY_HHG_RESOURCES.figures)
    parser = argparse.ArgumentParser(
        prog="cavity-hhg",
        description="Floquet high-harmonic spectra of atoms in optical cavities",
    )
    parser.add_argument("command", choices=[*COMMANDS, "reproduce"])
    parser.add_argument(
        "panel",
        nargs="?",
        choices=panels,
        help="Figure panel to reproduce (reproduce only)",
    )
    parser.add_argument("--config", type=Path, help="YAML run configuration")
    parser.add_argument("--out", type=Path, help="Output directory")
    parser.add_argument(
        "--threads", type=_threads, help="Worker count, or 'auto' (default: 1)"
    )
    parser.add_argument(
        "--no-cache", action="store_true", help="Do not read or write cached states"
    )
    parser.add_argument(
        "--seed-figure",
        choices=panels,
        help="Start from a figure panel's settings",
    )
    parser.add_argument(
        "--verbose", "-v", action="count", default=0, help="-v INFO, -vv DEBUG"
    )
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, Any]:
    overrides: dict[str, Any] = {}
    if args.threads is not None:
        overrides["threads"] = args.threads
    if args.no_cache:
        overrides["cache"] = {"enabled": False}
    return overrides


def main(argv: Sequence[str] | None = None) -> int:
    """CLI entry point; returns the process exit code."""
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "reproduce" and args.panel is None:
        parser.error("reproduce needs a figure panel")
    if args.command != "reproduce" and args.panel is not None:
        parser.error(f"'{args.command}' takes no figure panel; use --seed-figure")

    use_cache = not args.no_cache
    try:
        if args.command == "reproduce":
            paths = reproduce(
                args.panel,
                args.config,
                _overrides(args),
                args.out,
                use_cache=use_cache,
                verbose=args.verbose,
            )
        else:
            config = load_config(
                args.config, panel=args.seed_figure, overrides=_overrides(args)
            )
            paths = run_command(
                args.command,
                config,
                args.out,
                use_cache=use_cache,
                verbose=args.verbose,
            )
    except NumericalError as exc:
        print(f"cavity-hhg: {exc}", file=sys.stderr)  # noqa: T201
        return EXIT_NUMERICAL
    except (CavityHHGError, ValueError) as exc:
        print(f"cavity-hhg: {exc}", file=sys.stderr)  # noqa: T201
        return EXIT_CONFIG

    for path in paths:
        print(path)  # noqa: T201
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
