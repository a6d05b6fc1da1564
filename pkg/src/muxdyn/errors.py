"""Exception types shared across the package.

The CLI maps these onto exit codes: format problems exit 2, everything
else that is a modelling violation exits 1.
"""

from __future__ import annotations


class MuxdynError(Exception):
    """Base class for all package-specific errors."""


class NetworkFormatError(MuxdynError):
    """A network file could not be parsed or fails schema validation."""


class StructuralError(MuxdynError):
    """A matrix or graph does not have the structure an operation requires.

    Examples: an agent with an empty neighbor set on an active layer, a
    reducible matrix passed to the stationary-distribution solver.
    """


class AssumptionViolatedError(MuxdynError):
    """The network breaks the connectivity assumptions the analysis needs.

    Carries the offending detail so callers can report it: either the
    list of :class:`muxdyn.network.Violation` records from validation, or
    the competing closed classes found in the two-step chain.
    """

    def __init__(self, message: str, *, violations=None, classes=None):
        super().__init__(message)
        self.violations = list(violations) if violations is not None else []
        self.classes = list(classes) if classes is not None else []


class UnsupportedConfigurationError(MuxdynError):
    """The requested analysis is only defined for activation period 2."""


class NumericalInconsistencyError(MuxdynError):
    """A self-check failed: computed limit behaviour disagrees with brute force."""


class CalibrationError(MuxdynError):
    """The bound prefactor cannot be calibrated (non-contracting chain)."""
