"""Bundled resources for cavity-hhg.

Provides resolved paths to:

- The default run configuration
- Figure-panel reproduction targets
"""

from __future__ import annotations

from pathlib import Path
from typing import NamedTuple

_ROOT = Path(__file__).parent.resolve()


class CavityHHGYAML(NamedTuple):
    """Paths to bundled cavity-hhg configuration files.

    Attributes:
        default_config: Default run configuration.
        figures: Figure-panel definitions keyed by panel name.
    """

    default_config: Path
    figures: dict[str, Path]


def _panels(subdir: str) -> dict[str, Path]:
    return {path.stem: path for path in sorted((_ROOT / subdir).rglob("*.yaml"))}


CAVITY_HHG_RESOURCES = CavityHHGYAML(
    default_config=_ROOT / "default.yaml",
    figures=_panels("figures"),
)


__all__ = ["CAVITY_HHG_RESOURCES"]
