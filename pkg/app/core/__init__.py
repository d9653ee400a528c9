"""Core package: settings, shared models, errors, logging utilities and the job database."""

from .errors import CubicWaveError  # noqa: F401
from .models import BoundReport, JobStatus  # noqa: F401
from .settings import Settings, SolverDefaults  # noqa: F401
