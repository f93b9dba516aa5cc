"""Exception hierarchy for cavity-hhg.

Configuration problems are ``ValueError`` subclasses so that callers validating
their own inputs can catch them generically. Numerical failures carry the name
of the module that raised them, which the command-line front end prints before
exiting with a nonzero status.
"""

from __future__ import annotations


class CavityHHGError(Exception):
    """Base class for all errors raised by cavity-hhg."""


class ConfigError(CavityHHGError, ValueError):
    """Invalid or inconsistent run configuration."""


class NumericalError(CavityHHGError, RuntimeError):
    """A numerical stage failed to produce a trustworthy result.

    Attributes:
        module: Name of the pipeline stage that failed (e.g. ``"floquet"``).
    """

    module: str = "numerics"

    def __init__(self, message: str, *, module: str | None = None) -> None:
        """Attach the originating module to the message."""
        super().__init__(message)
        if module is not None:
            self.module = module

    def __str__(self) -> str:
        """Prefix the message with the originating module."""
        return f"[{self.module}] {super().__str__()}"


class EigensolverError(NumericalError):
    """Eigensolver did not converge or returned pairs failing the residual check."""

    module = "eigensolver"


class CalibrationError(NumericalError):
    """The model potential could not be calibrated to its target energy."""

    module = "atom"


class DimensionError(NumericalError):
    """The extended Floquet operator would exceed the configured memory budget."""

    module = "floquet"


class StateIdentificationError(NumericalError):
    """No computed Floquet eigenpair overlaps the field-free seed sufficiently."""

    module = "floquet"


class SymmetryBrokenError(NumericalError):
    """A Floquet state satisfies neither dynamical-symmetry label."""

    module = "floquet"


class DegeneratePolaritonError(NumericalError):
    """The polariton splitting vanishes (zero detuning and zero coupling)."""

    module = "cavity"


class OverIonizationError(NumericalError):
    """Time propagation lost more norm than the oracle tolerates."""

    module = "oracle"


class HarmonicOrderError(CavityHHGError, ValueError):
    """Requested harmonic order is outside the available channel span or spectrum."""


class ChannelMismatchError(CavityHHGError, ValueError):
    """Two Floquet states do not share their grid or channel range."""


class ResolutionError(CavityHHGError, ValueError):
    """Time step or absorbing layer violates the propagation resolution guard."""


class UndersamplingError(CavityHHGError, ValueError):
    """Pulse synthesis time sampling is too coarse for the windowed harmonics."""


class EmptyWindowError(CavityHHGError, ValueError):
    """No spectral entries lie inside the synthesis window."""


class PeakDetectionError(CavityHHGError, ValueError):
    """Too few pulse peaks were detected to measure a spacing."""
