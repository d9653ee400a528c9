"""Pydantic models shared across the library, the CLI and the HTTP service.

This module defines the wire schema of spectral fields, the root-solver result, the bound reports produced by the
verifier, the solve artifact, the run configuration echoed into every artifact, and the job models of the service.
"""

from fractions import Fraction
from typing import Any

from pydantic import BaseModel, ConfigDict, Field

from app.core.settings import SolverDefaults

SQRT2_LOWER = Fraction(141_421_356, 10**8)
SQRT2_UPPER = Fraction(141_421_357, 10**8)


class ModePayload(BaseModel):
    """One stored coefficient of a spectral field."""

    m: int = Field(ge=0)
    n: int = Field(ge=0)
    c: float


class FieldPayload(BaseModel):
    """JSON schema of a spectral field: modes sorted lexicographically by (m, n)."""

    rho: str = "1001/1000"
    tail: float = Field(default=0.0, ge=0.0)
    modes: list[ModePayload] = Field(default_factory=list)


class QRoot(BaseModel):
    """Root of the theta-series equation together with its bracketing certificate."""

    model_config = ConfigDict(frozen=True)

    q: float
    residual: float
    bracket: tuple[float, float]
    certified_bracket: tuple[str, str] = ("13/1000", "15/1000")
    series_cutoff: int
    iterations: int


class BoundReport(BaseModel):
    """A measured quantity compared against a bound, with truncation provenance."""

    model_config = ConfigDict(populate_by_name=True)

    name: str
    k: int | None = None
    measured: float
    bound: float
    lower: float | None = None
    margin: float
    passed: bool = Field(serialization_alias="pass")
    truncation: dict[str, Any] = Field(default_factory=dict)
    details: dict[str, Any] = Field(default_factory=dict)

    @classmethod
    def compare(
        cls,
        name: str,
        measured: float | Fraction,
        bound: Fraction,
        *,
        k: int | None = None,
        lower: Fraction | None = None,
        truncation: dict[str, Any] | None = None,
        details: dict[str, Any] | None = None,
    ) -> "BoundReport":
        """Build a report; the verdict compares the measurement exactly against the rational bounds."""
        exact = Fraction(measured)
        passed = exact <= bound and (lower is None or exact > lower)
        return cls(
            name=name,
            k=k,
            measured=float(measured),
            bound=float(bound),
            lower=None if lower is None else float(lower),
            margin=float(bound - exact),
            passed=passed,
            truncation=truncation or {},
            details=details or {},
        )


class TailBound(BaseModel):
    """Closed-form bound on the c-lattice sum over shifts with |mu| > l or |nu| > l."""

    model_config = ConfigDict(frozen=True)

    l: int = Field(ge=1)
    alpha0: float
    alpha1: float
    alpha2: float
    value: float


class TheoremCertificate(BaseModel):
    """Contraction and ball-mapping inequalities of the existence argument at one k."""

    k: int
    delta_k: float
    regime: str
    contraction: BoundReport
    ball_mapping: BoundReport

    @property
    def passed(self) -> bool:
        """True iff both inequalities hold."""
        return self.contraction.passed and self.ball_mapping.passed


class RunConfig(BaseModel):
    """Effective configuration of one CLI or service run, echoed into every artifact."""

    subcommand: str
    k: int | None = None
    tol: float | None = None
    max_iter: int | None = None
    n_f: int | None = None
    scan_depth: int | None = None
    lattice_cutoff: int | None = None
    seed: int | None = None
    strict: bool = False
    nx: int | None = None
    nt: int | None = None
    ntau: int | None = None
    scheme: str | None = None
    input_path: str | None = None
    output_path: str | None = None
    defaults: SolverDefaults = SolverDefaults()


class SolutionPayload(BaseModel):
    """Serialized result of a Picard solve."""

    k: int
    omega: float
    omega_exact: str
    q: float
    iterations: int
    contraction: float
    pde_residual: float
    distance_to_uk: float
    truncation_bound: float
    regime: str
    nontrivial: bool
    increments: list[float]
    config: RunConfig
    u: FieldPayload
    h: FieldPayload


class JobStatus(BaseModel):
    """Pydantic model representing the status of a background job."""

    kind: str
    status: str
    created_at: str
    completed_at: str | None = None
    error: str | None = None


class SolveJobRequest(BaseModel):
    """Parameters of a background Picard solve."""

    k: int = Field(ge=1)
    tol: float | None = Field(default=None, gt=0)
    max_iter: int | None = Field(default=None, ge=1)


class VerifyJobRequest(BaseModel):
    """Parameters of a background bound-suite run."""

    k: int = Field(default=100, ge=100)
    scan_depth: int | None = Field(default=None, ge=8)
    strict: bool = False
    seed: int | None = None


class SuiteArtifact(BaseModel):
    """Output of a bound-suite run: configuration, the solved q and every report sorted by name."""

    config: RunConfig
    q: float
    reports: list[BoundReport]

    @property
    def passed(self) -> bool:
        """True iff every report passes."""
        return all(report.passed for report in self.reports)


class TimecheckPayload(BaseModel):
    """Period-return diagnostics of the time-domain cross-check."""

    config: RunConfig
    q: float
    k: int
    return_error: float
    energy_drift: float
