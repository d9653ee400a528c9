"""Tests for the time-domain period check."""

import math

import numpy as np
import pytest

from app.core.errors import ConfigurationError, DomainError
from app.core.settings import SolverDefaults
from app.spectral.core import SpectralField
from app.spectral.fixed_point import SolutionReport, solve_for_k
from app.spectral.timedomain import (
    GridState,
    energy,
    grid_points,
    initial_data,
    integrate_period,
    period_check,
    second_derivative,
)

LINEAR_AMPLITUDE = 1e-8
SMALL_NX = 32
RETURN_ERROR_TOL = 1e-4
ENERGY_DRIFT_TOL = 1e-6
EMPIRICAL_K = 1000
HALVED_NT = (50_000, 100_000)
QUADRATIC_RATIO = (3.5, 4.5)


def _linear_mode(omega: float = 1.0, n_t: int = 2000) -> float:
    field = SpectralField.from_modes({(0, 0): LINEAR_AMPLITUDE})
    _, error = integrate_period(initial_data(field, omega, SMALL_NX), omega, n_t)
    return error


def test_initial_data_velocities() -> None:
    """P00 starts as u = 0, u_t = sin x; P10 at omega = 1 starts with u_t = 3 sin x."""
    x = grid_points(SMALL_NX)
    base = initial_data(SpectralField.from_modes({(0, 0): 1.0}), 1.0, SMALL_NX)
    faster = initial_data(SpectralField.from_modes({(1, 0): 1.0}), 1.0, SMALL_NX)
    if np.any(base.positions) or np.max(np.abs(base.velocities - np.sin(x))) > 1e-14:  # noqa: PLR2004
        msg = "P00 initial data should be u = 0, u_t = sin x"
        raise AssertionError(msg)
    if np.max(np.abs(faster.velocities - 3 * np.sin(x))) > 1e-13:  # noqa: PLR2004
        msg = "P10 initial velocity should be 3 sin x"
        raise AssertionError(msg)


def test_grid_limits() -> None:
    """N_x >= 16 and N_t >= 1000 are enforced, and a CFL violation is a configuration error."""
    field = SpectralField.from_modes({(0, 0): 1.0})
    with pytest.raises(DomainError):
        initial_data(field, 1.0, 8)
    with pytest.raises(DomainError):
        integrate_period(initial_data(field, 1.0, SMALL_NX), 1.0, 999)
    with pytest.raises(ConfigurationError):
        integrate_period(initial_data(field, 1.0, 4096), 1.0, 1000)


def test_grid_state_requires_clamped_ends() -> None:
    """Positions must vanish at both ends."""
    positions = np.ones(SMALL_NX + 1)
    with pytest.raises(ConfigurationError):
        GridState(positions, np.zeros(SMALL_NX + 1), 0.0, SMALL_NX)


def test_zero_field_returns_exactly() -> None:
    """The zero field stays zero and reports no error."""
    _, error = integrate_period(initial_data(SpectralField.zero(), 1.0, SMALL_NX), 1.0, 1000)
    if error != 0.0:
        msg = f"Expected zero return error, got {error}"
        raise AssertionError(msg)


def test_spectral_second_derivative() -> None:
    """(sin 3x)'' = -9 sin 3x to round-off."""
    x = grid_points(64)
    positions = np.sin(3 * x)
    positions[0] = positions[-1] = 0.0
    error = np.max(np.abs(second_derivative(positions) + 9 * positions))
    if error > 1e-10:  # noqa: PLR2004
        msg = f"spectral u_xx error {error}"
        raise AssertionError(msg)


def test_energy_of_simple_states() -> None:
    """E(u = 0, u_t = sin x) = pi/4 and E(u = sin x, u_t = 0) = pi/4 + 3 pi/32."""
    n_x = 256
    x = grid_points(n_x)
    sine = np.sin(x)
    sine[0] = sine[-1] = 0.0
    moving = GridState(np.zeros(n_x + 1), sine.copy(), 0.0, n_x)
    displaced = GridState(sine.copy(), np.zeros(n_x + 1), 0.0, n_x)
    if abs(energy(moving) - math.pi / 4) > 1e-9:  # noqa: PLR2004
        msg = f"kinetic energy {energy(moving)} != pi/4"
        raise AssertionError(msg)
    if abs(energy(displaced) - (math.pi / 4 + 3 * math.pi / 32)) > 1e-9:  # noqa: PLR2004
        msg = f"potential energy {energy(displaced)} != pi/4 + 3 pi/32"
        raise AssertionError(msg)
    if abs(energy(displaced, "fd") - energy(displaced)) > 1e-4:  # noqa: PLR2004
        msg = "finite-difference energy should approximate the spectral one"
        raise AssertionError(msg)


def test_unknown_scheme() -> None:
    """Only spectral and fd are accepted."""
    with pytest.raises(ConfigurationError):
        second_derivative(np.zeros(SMALL_NX + 1), "chebyshev")  # type: ignore[arg-type]


def test_linear_mode_second_order_in_time() -> None:
    """A tiny P00 mode returns after one period with an error that drops fourfold when N_t doubles."""
    coarse, fine = _linear_mode(n_t=1000), _linear_mode(n_t=2000)
    if fine > 10 * (2 * math.pi / 2000) ** 2:
        msg = f"return error {fine} too large for N_t = 2000"
        raise AssertionError(msg)
    ratio = coarse / fine
    if not 3.5 <= ratio <= 4.5:  # noqa: PLR2004
        msg = f"Expected a ratio near 4, got {ratio}"
        raise AssertionError(msg)


def test_integration_preserves_space_reflection() -> None:
    """Fields symmetric under x -> pi - x stay symmetric."""
    field = SpectralField.from_modes({(0, 0): 0.3, (0, 1): 0.05, (1, 2): 0.02})
    final, _ = integrate_period(initial_data(field, 1.0, SMALL_NX), 1.0, 1000)
    if np.max(np.abs(final.positions - final.positions[::-1])) > 1e-10:  # noqa: PLR2004
        msg = "space reflection symmetry lost during integration"
        raise AssertionError(msg)


@pytest.fixture(scope="module")
def empirical_report() -> SolutionReport:
    """Picard solution at k = 1000 with the library defaults."""
    return solve_for_k(EMPIRICAL_K, SolverDefaults())


def test_solution_returns_after_one_period(empirical_report: SolutionReport) -> None:
    """The Picard solution at k = 1000 is periodic in the time domain with a small energy drift."""
    defaults = SolverDefaults()
    check = period_check(empirical_report.u, float(empirical_report.omega), defaults.nx, defaults.nt)
    if check.return_error > RETURN_ERROR_TOL:
        msg = f"return error {check.return_error} above {RETURN_ERROR_TOL}"
        raise AssertionError(msg)
    if check.energy_drift > ENERGY_DRIFT_TOL:
        msg = f"energy drift {check.energy_drift} above {ENERGY_DRIFT_TOL}"
        raise AssertionError(msg)


def test_solution_return_error_is_second_order(empirical_report: SolutionReport) -> None:
    """Doubling N_t on the k = 1000 solution cuts the return error about fourfold."""
    omega = float(empirical_report.omega)
    coarse, fine = (period_check(empirical_report.u, omega, SolverDefaults().nx, n_t).return_error for n_t in HALVED_NT)
    ratio = coarse / fine
    if not QUADRATIC_RATIO[0] <= ratio <= QUADRATIC_RATIO[1]:
        msg = f"return errors {coarse}, {fine} give ratio {ratio}, expected about 4"
        raise AssertionError(msg)
