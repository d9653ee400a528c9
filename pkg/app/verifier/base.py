"""Base check abstraction for the bound verifier.

A check reads the shared SuiteContext and returns one or more BoundReports. Checks are independent and side-effect
free, so the suite may run them concurrently.
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass
from typing import ClassVar

from app.core.models import BoundReport, QRoot, RunConfig
from app.spectral.approx import ApproxCoefficients, FrequencyContext
from app.spectral.core import WeightConfig
from app.spectral.operators import Preconditioner


@dataclass(frozen=True)
class SuiteContext:
    """Everything a check may need, built once per suite run."""

    config: RunConfig
    root: QRoot
    coeffs: ApproxCoefficients
    weight: WeightConfig
    preconditioner: Preconditioner
    lemma: FrequencyContext
    theorem: FrequencyContext
    norm_contexts: tuple[FrequencyContext, ...]
    scan_depth: int
    lattice: int
    seed: int


class BoundCheck(ABC):
    """Abstract base class for all registered checks."""

    name: ClassVar[str]
    strict_only: ClassVar[bool] = False

    @abstractmethod
    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Measure and compare; never mutates the context."""
