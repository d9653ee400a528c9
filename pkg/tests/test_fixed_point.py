"""Tests for the Picard iteration and its diagnostics."""

import math

import pytest

from app.core.errors import ConvergenceError, DomainError
from app.core.models import RunConfig
from app.spectral.approx import ApproxCoefficients, FrequencyContext
from app.spectral.core import SpectralField, linear_combine, norm
from app.spectral.fixed_point import (
    CONTRACTION_CAP,
    DISTANCE_CAP,
    THEOREM_RANGE,
    SolutionReport,
    delta_k,
    iterate,
    nontriviality_check,
)
from app.spectral.operators import Preconditioner, residual_N

MAX_ITERATIONS = 50
SOLVE_TOL = 1e-14
PDE_RESIDUAL_TOL = 1e-12


@pytest.fixture(scope="module")
def theorem_report(
    ctx_theorem: FrequencyContext, coeffs: ApproxCoefficients, preconditioner: Preconditioner
) -> SolutionReport:
    """Picard solve at the certificate threshold."""
    return iterate(ctx_theorem, coeffs, preconditioner, tol=SOLVE_TOL)


def test_delta_k() -> None:
    """delta_k = k^{-1/2}/500."""
    if not math.isclose(delta_k(10_000), 2e-5):
        msg = f"Expected delta_k(10^4) = 2e-5, got {delta_k(10_000)}"
        raise AssertionError(msg)


def test_converges_at_threshold(theorem_report: SolutionReport) -> None:
    """At k = 79675 the iteration converges fast and stays inside the ball."""
    if theorem_report.iterations > MAX_ITERATIONS or theorem_report.increments[-1] > SOLVE_TOL:
        msg = f"{theorem_report.iterations} iterations, last increment {theorem_report.increments[-1]}"
        raise AssertionError(msg)
    if theorem_report.contraction_estimate > float(CONTRACTION_CAP):
        msg = f"contraction estimate {theorem_report.contraction_estimate} above 0.929"
        raise AssertionError(msg)
    if theorem_report.regime != THEOREM_RANGE:
        msg = f"Expected the theorem regime, got {theorem_report.regime}"
        raise AssertionError(msg)


def test_solution_close_to_uk(theorem_report: SolutionReport, ctx_theorem: FrequencyContext) -> None:
    """||u - u_k|| <= (139/42500) k^{-1/2} and u is nontrivial."""
    cap = float(DISTANCE_CAP) / math.sqrt(ctx_theorem.k)
    if theorem_report.distance_to_uk > cap:
        msg = f"||A h|| = {theorem_report.distance_to_uk} exceeds {cap}"
        raise AssertionError(msg)
    if not nontriviality_check(ctx_theorem, theorem_report):
        msg = "solution at the threshold must be nontrivial"
        raise AssertionError(msg)


def test_pde_residual(theorem_report: SolutionReport) -> None:
    """||L_k u + u^3|| is at round-off level."""
    if theorem_report.pde_residual_norm > PDE_RESIDUAL_TOL:
        msg = f"PDE residual {theorem_report.pde_residual_norm} above {PDE_RESIDUAL_TOL}"
        raise AssertionError(msg)


def test_solution_is_a_fixed_point(
    theorem_report: SolutionReport,
    ctx_theorem: FrequencyContext,
    coeffs: ApproxCoefficients,
    preconditioner: Preconditioner,
) -> None:
    """N_k maps the returned h to itself up to twice the iteration tolerance."""
    h = theorem_report.h.representative()
    gap = norm(linear_combine(1.0, residual_N(ctx_theorem, coeffs, preconditioner, h), -1.0, h))
    if gap > 2 * SOLVE_TOL:
        msg = f"||N_k(h) - h|| = {gap} above {2 * SOLVE_TOL}"
        raise AssertionError(msg)


def test_payload_carries_config(theorem_report: SolutionReport) -> None:
    """The serialized solution embeds the run configuration and the exact frequency."""
    payload = theorem_report.to_payload(RunConfig(subcommand="solve", k=theorem_report.k))
    if payload.omega_exact != "159351/159350" or payload.config.subcommand != "solve":
        msg = f"Unexpected payload header {payload.omega_exact}, {payload.config.subcommand}"
        raise AssertionError(msg)
    if not payload.nontrivial or not payload.u.modes:
        msg = "payload should mark the solution nontrivial and carry modes"
        raise AssertionError(msg)


def test_max_iter_exhaustion(
    ctx_theorem: FrequencyContext, coeffs: ApproxCoefficients, preconditioner: Preconditioner
) -> None:
    """One iteration cannot reach 1e-14; the error keeps the increment history."""
    with pytest.raises(ConvergenceError) as excinfo:
        iterate(ctx_theorem, coeffs, preconditioner, tol=SOLVE_TOL, max_iter=1)
    if len(excinfo.value.increments) != 1:
        msg = f"Expected one recorded increment, got {excinfo.value.increments}"
        raise AssertionError(msg)


def test_iterate_rejects_bad_parameters(
    ctx_theorem: FrequencyContext, coeffs: ApproxCoefficients, preconditioner: Preconditioner
) -> None:
    """tol must be positive and max_iter at least one."""
    with pytest.raises(DomainError):
        iterate(ctx_theorem, coeffs, preconditioner, tol=0.0)
    with pytest.raises(DomainError):
        iterate(ctx_theorem, coeffs, preconditioner, max_iter=0)


def test_zero_field_is_trivial(ctx_theorem: FrequencyContext) -> None:
    """The zero field fails the nontriviality bound."""
    if nontriviality_check(ctx_theorem, SpectralField.zero()):
        msg = "zero must not pass the nontriviality check"
        raise AssertionError(msg)
