"""Configuration for the solver defaults and the HTTP service."""

from fractions import Fraction

from pydantic import BaseModel, ConfigDict, field_validator
from pydantic_settings import BaseSettings, SettingsConfigDict


class SolverDefaults(BaseModel):
    """Numeric defaults of the library. The CLI reads only these plus its flags."""

    model_config = ConfigDict(frozen=True)

    rho: str = "1001/1000"
    n_f: int = 20
    q_tol: float = 1e-14
    q_series_cutoff: int = 16
    solve_tol: float = 1e-14
    max_iter: int = 200
    truncation_order: int = 60
    fold_floor: float = 1e-40
    lattice_cutoff: int = 40
    b_series_box: int = 40
    scan_depth: int = 48
    seed: int = 1729
    gap_samples: int = 10_000
    fraction_k_max: int = 200
    fraction_n_max: int = 50
    tail_l_max: int = 10
    tail_cutoff: int = 400
    lemma_k: int = 100
    theorem_k: int = 79_675
    nx: int = 256
    nt: int = 100_000
    grid_ntau: int = 128
    grid_nx: int = 128
    verifier_workers: int = 4

    @field_validator("rho")
    @classmethod
    def _rho_is_rational_above_one(cls, value: str) -> str:
        if Fraction(value) <= 1:
            msg = f"rho must exceed 1, got {value}"
            raise ValueError(msg)
        return value

    @property
    def rho_fraction(self) -> Fraction:
        """The weight base as an exact rational."""
        return Fraction(self.rho)


class Settings(BaseSettings):
    """Service settings for the cubic-wave-periodic HTTP API."""

    model_config = SettingsConfigDict(env_file=".env", env_file_encoding="utf-8", extra="ignore")

    database_url: str = "sqlite:///jobs.db"
    server_host: str = "127.0.0.1"
    server_port: int = 8000
    log_file: str = "jobs/solver.log"
    solver: SolverDefaults = SolverDefaults()


def get_settings() -> "Settings":
    """Return an instance of the application settings."""
    return Settings()


def resolve[T](value: T | None, default: T) -> T:
    """The given value unless it is None; an explicit 0 is kept and left to the callee to reject."""
    return default if value is None else value
