"""Exception hierarchy shared by the spectral library, the verifier, the CLI and the HTTP service."""


class CubicWaveError(Exception):
    """Base class for every error raised by this package."""


class DomainError(CubicWaveError, ValueError):
    """An argument lies outside the domain of an operation."""


class ConfigurationError(CubicWaveError, ValueError):
    """Inconsistent run parameters (mismatched weights, CFL violation, bad cutoffs)."""


class OutOfRangeError(CubicWaveError, ValueError):
    """A lemma or certificate was invoked below its hypothesis on k."""


class ConsistencyError(CubicWaveError, RuntimeError):
    """An internal certificate failed (q bracket, beta interval, preconditioner entries)."""


class ConvergenceError(CubicWaveError, RuntimeError):
    """Picard iteration hit max_iter before reaching the tolerance."""

    def __init__(self, msg: str, increments: list[float]) -> None:
        """Keep the increment history so callers can inspect the stall."""
        super().__init__(msg)
        self.increments = increments


class DivergenceError(CubicWaveError, RuntimeError):
    """An iterate left the ball regime of the contraction argument."""

    def __init__(self, msg: str, increments: list[float]) -> None:
        """Keep the increment history so callers can inspect the blow-up."""
        super().__init__(msg)
        self.increments = increments
