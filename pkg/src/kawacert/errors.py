"""Exception types shared across the pipeline."""


class KawacertError(Exception):
    """Base class for all library errors."""


class DivisionByZeroInterval(KawacertError):
    """Divisor interval contains zero."""


class DomainError(KawacertError):
    """Argument outside the domain of an elementary function."""


class NotVerified(KawacertError):
    """A certification step failed (residual/Neumann test did not close)."""


class DomainMismatch(KawacertError):
    """Sequences live on different boxes or have incompatible parity."""


class SymbolSingular(KawacertError):
    """A diagonal symbol evaluation contains zero where inversion is needed."""


class WindowTooSmall(KawacertError):
    """Trace window too small for the requested trace order."""


class ParamsOutOfRange(KawacertError):
    """Model parameters violate the certified validity window."""


class NoConvergence(KawacertError):
    """Iteration failed to reach its tolerance."""

    def __init__(self, message, history=None):
        super().__init__(message)
        self.history = list(history) if history is not None else []


class SingularTruncation(KawacertError):
    """Floating inversion of a truncated operator failed."""


class NuOutOfRange(KawacertError):
    """Eigenvalue shift outside the certified spectral window."""


class NegativeInner(KawacertError):
    """An inner product that is a square by construction came out negative."""


class NeumannFails(KawacertError):
    """Neumann-series condition 2*kappa*C*r0 < 1 violated."""


class SweepStalled(KawacertError):
    """Resolvent continuation step size underflowed."""

    def __init__(self, message, nu_star=None):
        super().__init__(message)
        self.nu_star = nu_star


class MissingArtifact(KawacertError):
    """A pipeline stage requires an artifact that has not been produced."""


class ConfigError(KawacertError):
    """Run configuration could not be parsed or is inconsistent."""
