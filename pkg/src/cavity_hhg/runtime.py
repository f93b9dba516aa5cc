"""Process-wide runtime setup: logging verbosity and worker-pool sizing."""

from __future__ import annotations

import logging
import os
from typing import Literal, NamedTuple

_LOG_LEVELS = [logging.WARNING, logging.INFO, logging.DEBUG]


class RuntimeContext(NamedTuple):
    """Runtime context with package logger and resolved worker count."""

    logger: logging.Logger
    threads: int
    verbose: bool


def resolve_threads(threads: int | Literal["auto"] = 1) -> int:
    """Resolve the worker count, auto-detecting if needed.

    Args:
        threads: Number of workers, or "auto" to use the available CPU count.

    Returns:
        Positive worker count.

    Raises:
        ValueError: If an explicit count below 1 is given.
    """
    if threads == "auto":
        return max(1, os.cpu_count() or 1)
    if threads < 1:
        raise ValueError(f"Worker count must be at least 1, got {threads}")
    return threads


def setup_runtime(
    threads: int | Literal["auto"] = 1,
    verbose: int = 0,
) -> RuntimeContext:
    """Configure the ``cavity_hhg`` logger and resolve the worker count.

    Args:
        threads: Number of workers for sweeps, chains and trajectories.
        verbose: Verbosity level (0=WARNING, 1=INFO, 2+=DEBUG)

    Returns:
        Configured logger and resolved worker count.
    """
    log_level = min(verbose, len(_LOG_LEVELS) - 1)
    cavity_logger = logging.getLogger("cavity_hhg")
    cavity_logger.setLevel(_LOG_LEVELS[log_level])
    if not cavity_logger.handlers:
        handler = logging.StreamHandler()
        handler.setFormatter(logging.Formatter("%(name)s - %(message)s"))
        cavity_logger.addHandler(handler)

    return RuntimeContext(
        logger=cavity_logger, threads=resolve_threads(threads), verbose=verbose > 0
    )
