"""Shared fixtures: an isolated job database and the solved q with its coefficient records."""

import os
import tempfile
from collections.abc import Iterator
from pathlib import Path

import pytest
from fastapi.testclient import TestClient

_TMP = Path(tempfile.mkdtemp(prefix="cubic-wave-tests-"))
os.environ.setdefault("DATABASE_URL", f"sqlite:///{_TMP / 'jobs.db'}")
os.environ.setdefault("LOG_FILE", str(_TMP / "solver.log"))

from app.core.models import QRoot  # noqa: E402
from app.spectral.approx import ApproxCoefficients, FrequencyContext, build_coeffs  # noqa: E402
from app.spectral.operators import OperatorAConstants, Preconditioner, build_A  # noqa: E402
from app.spectral.qroot import solve_q  # noqa: E402


@pytest.fixture(scope="session")
def q_root() -> QRoot:
    """The root of g at the default tolerance."""
    return solve_q()


@pytest.fixture(scope="session")
def coeffs(q_root: QRoot) -> ApproxCoefficients:
    """f, beta0 and beta1 at the solved q."""
    return build_coeffs(q_root.q)


@pytest.fixture(scope="session")
def preconditioner(coeffs: ApproxCoefficients) -> Preconditioner:
    """The preconditioner A built from the tabulated betas."""
    return build_A(OperatorAConstants.from_coeffs(coeffs))


@pytest.fixture(scope="session")
def ctx100() -> FrequencyContext:
    """k = 100, the smallest k of the operator lemmas."""
    return FrequencyContext(100)


@pytest.fixture(scope="session")
def ctx_theorem() -> FrequencyContext:
    """k = 79675, the threshold of the existence certificate."""
    return FrequencyContext(79_675)


@pytest.fixture(scope="session")
def tmp_dir() -> Path:
    """Scratch directory shared by the session."""
    return _TMP


@pytest.fixture(scope="session")
def client() -> Iterator[TestClient]:
    """Test client with the lifespan run, so the jobs table exists."""
    from main import app

    with TestClient(app) as test_client:
        yield test_client
