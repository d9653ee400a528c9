"""Spectral package: sequence space, q root, approximate solution, operators, Picard solver, time-domain check."""

from .core import ModeIndex, SpectralField, Subspace, WeightConfig  # noqa: F401
