"""Time-domain cross-check: integrate u_tt - u_xx + u^3 = 0 over one period from the spectral initial data.

Time is unscaled (t = tau / Omega), so one period is 2 pi / Omega. The grid is x_j = j pi / N_x, j = 0..N_x, with
Dirichlet ends. Space derivatives are sine-pseudospectral (DST-I on the interior nodes) or second-order centered
differences; time stepping is velocity Verlet.
"""

import math
from dataclasses import dataclass
from typing import Literal

import numpy as np
from numpy.typing import NDArray
from scipy.fft import dst, idst
from scipy.integrate import trapezoid

from app.core.errors import ConfigurationError, DomainError
from app.core.utils import get_logger
from app.spectral.core import SpectralField

logger = get_logger("cubic-wave.timedomain")

type Scheme = Literal["spectral", "fd"]

MIN_NX = 16
MIN_NT = 1_000
CFL_FACTOR = 0.5
SCHEMES: tuple[str, ...] = ("spectral", "fd")


@dataclass(frozen=True)
class GridState:
    """Positions and velocities on x_j = j pi / N_x at one instant."""

    positions: NDArray[np.float64]
    velocities: NDArray[np.float64]
    time: float
    n_x: int

    def __post_init__(self) -> None:
        """Shapes must match the grid and both ends must be clamped."""
        expected = (self.n_x + 1,)
        if self.positions.shape != expected or self.velocities.shape != expected:
            msg = f"grid state arrays must have shape {expected}"
            raise ConfigurationError(msg)
        if self.positions[0] != 0.0 or self.positions[-1] != 0.0:
            msg = "positions must vanish at x = 0 and x = pi"
            raise ConfigurationError(msg)


@dataclass(frozen=True)
class PeriodCheck:
    """Outcome of one period of integration."""

    return_error: float
    energy_drift: float
    n_x: int
    n_t: int
    scheme: str


def grid_points(n_x: int) -> NDArray[np.float64]:
    """Nodes j pi / N_x for j = 0..N_x."""
    return np.arange(n_x + 1) * math.pi / n_x


def _check_scheme(scheme: str) -> None:
    if scheme not in SCHEMES:
        msg = f"unknown spatial scheme {scheme!r}; expected one of {SCHEMES}"
        raise ConfigurationError(msg)


def initial_data(u: SpectralField, omega: float, n_x: int) -> GridState:
    """tau = 0 slice: u vanishes, u_t = Omega sum c_{m,n} (2m+1) sin((2n+1) x_j)."""
    if n_x < MIN_NX:
        msg = f"N_x must be at least {MIN_NX}, got {n_x}"
        raise DomainError(msg)
    x = grid_points(n_x)
    velocities = np.zeros(n_x + 1)
    if not u.is_empty:
        temporal = omega * (2 * np.arange(u.shape[0]) + 1)
        spatial = np.sin(np.outer(x, 2 * np.arange(u.shape[1]) + 1))
        velocities = spatial @ (temporal @ u.coeffs)
        velocities[0] = velocities[-1] = 0.0
    return GridState(np.zeros(n_x + 1), velocities, 0.0, n_x)


def _sine_wavenumbers(n_x: int) -> NDArray[np.float64]:
    return np.arange(1, n_x, dtype=np.float64)


def second_derivative(positions: NDArray[np.float64], scheme: Scheme = "spectral") -> NDArray[np.float64]:
    """u_xx on the grid with zero values at both ends."""
    _check_scheme(scheme)
    n_x = positions.size - 1
    out = np.zeros_like(positions)
    interior = positions[1:-1]
    if scheme == "spectral":
        wavenumbers = _sine_wavenumbers(n_x)
        out[1:-1] = idst(-(wavenumbers**2) * dst(interior, type=1), type=1)
    else:
        dx = math.pi / n_x
        out[1:-1] = (positions[2:] - 2 * interior + positions[:-2]) / dx**2
    return out


def _acceleration(positions: NDArray[np.float64], scheme: Scheme) -> NDArray[np.float64]:
    acc = second_derivative(positions, scheme) - positions**3
    acc[0] = acc[-1] = 0.0
    return acc


def integrate_period(
    state: GridState, omega: float, n_t: int, scheme: Scheme = "spectral"
) -> tuple[GridState, float]:
    """Velocity Verlet over t in [0, 2 pi / omega]; returns the final state and the normalized return error."""
    _check_scheme(scheme)
    if n_t < MIN_NT:
        msg = f"N_t must be at least {MIN_NT}, got {n_t}"
        raise DomainError(msg)
    if not omega > 0:
        msg = f"omega must be positive, got {omega}"
        raise DomainError(msg)
    dt = 2 * math.pi / omega / n_t
    dx = math.pi / state.n_x
    if dt > CFL_FACTOR * dx:
        msg = f"CFL violation: dt={dt:.3e} exceeds {CFL_FACTOR} dx={CFL_FACTOR * dx:.3e}"
        raise ConfigurationError(msg)

    u = state.positions.copy()
    v = state.velocities.copy()
    acc = _acceleration(u, scheme)
    for _ in range(n_t):
        v += 0.5 * dt * acc
        u += dt * v
        u[0] = u[-1] = 0.0
        acc = _acceleration(u, scheme)
        v += 0.5 * dt * acc
    final = GridState(u, v, state.time + n_t * dt, state.n_x)

    scale = float(np.max(np.abs(state.velocities)))
    if scale == 0.0:
        return final, 0.0
    mismatch = np.abs(final.positions - state.positions) + np.abs(final.velocities - state.velocities)
    return_error = float(np.max(mismatch)) / scale
    logger.info(f"Integrated one period with N_x={state.n_x}, N_t={n_t} ({scheme}): return error {return_error:.3e}")
    return final, return_error


def energy(state: GridState, scheme: Scheme = "spectral") -> float:
    """Trapezoidal quadrature of u_t^2/2 + u_x^2/2 + u^4/4 over [0, pi]."""
    _check_scheme(scheme)
    x = grid_points(state.n_x)
    kinetic = trapezoid(0.5 * state.velocities**2, x)
    potential = trapezoid(0.25 * state.positions**4, x)
    if scheme == "spectral":
        coefficients = dst(state.positions[1:-1], type=1) / state.n_x
        gradient = math.pi / 4 * float(np.sum((coefficients * _sine_wavenumbers(state.n_x)) ** 2))
    else:
        dx = math.pi / state.n_x
        gradient = 0.5 * float(np.sum(np.diff(state.positions) ** 2)) / dx
    return float(kinetic + potential + gradient)


def energy_drift(initial: GridState, final: GridState, scheme: Scheme = "spectral") -> float:
    """Relative change of the energy between two states; zero for a zero-energy start."""
    start = energy(initial, scheme)
    if start == 0.0:
        return 0.0
    return abs(energy(final, scheme) - start) / start


def period_check(u: SpectralField, omega: float, n_x: int, n_t: int, scheme: Scheme = "spectral") -> PeriodCheck:
    """Initial data, one period of integration, and the energy drift over it."""
    start = initial_data(u, omega, n_x)
    final, return_error = integrate_period(start, omega, n_t, scheme)
    return PeriodCheck(
        return_error=return_error,
        energy_drift=energy_drift(start, final, scheme),
        n_x=n_x,
        n_t=n_t,
        scheme=scheme,
    )
