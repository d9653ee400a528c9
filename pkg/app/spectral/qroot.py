"""The theta-series equation for q and its certified bisection solver.

    g(x) = 2 (sum_{n>=0} x^{(2n+1)^2/4})^4 - (1/2 + sum_{n>=1} x^{n^2})^4 + 3 sum_{n>=0} x^{2n+1}/(1 + x^{2n+1})^2

The elementary closed forms g_lower <= g <= g_upper certify the sign change on [13/1000, 15/1000], and g is
increasing there, so bisection on that bracket finds the unique root.
"""

from fractions import Fraction

import numpy as np

from app.core.errors import ConsistencyError, DomainError
from app.core.models import QRoot
from app.core.utils import get_logger

logger = get_logger("cubic-wave.qroot")

BRACKET_LO = Fraction(13, 1000)
BRACKET_HI = Fraction(15, 1000)
DEFAULT_CUTOFF = 16
ADMISSIBLE_TERM = 1e-18

type Real = float | Fraction


def bracket_label(endpoint: Fraction, scale: int = 1000) -> str:
    """Endpoint written over a fixed denominator, so 15/1000 is not reduced to 3/200."""
    numerator = endpoint * scale
    if numerator.denominator != 1:
        msg = f"{endpoint} is not a multiple of 1/{scale}"
        raise DomainError(msg)
    return f"{numerator.numerator}/{scale}"


def _check_x(x: float) -> None:
    if not 0.0 <= x < 1.0:
        msg = f"g is defined for 0 <= x < 1, got {x}"
        raise DomainError(msg)


def series_cutoff(x: float) -> int:
    """Smallest cutoff at which the first omitted term of every sum in g is below 1e-18."""
    _check_x(x)
    if x == 0.0:
        return 1
    cutoff = 1
    while max(x ** ((2 * cutoff + 3) ** 2 / 4), x ** ((cutoff + 1) ** 2), x ** (2 * cutoff + 3)) >= ADMISSIBLE_TERM:
        cutoff += 1
    return cutoff


def g(x: float, cutoff: int = DEFAULT_CUTOFF) -> float:
    """Evaluate g with every sum truncated at index cutoff."""
    _check_x(x)
    if cutoff < 1:
        msg = f"series cutoff must be >= 1, got {cutoff}"
        raise DomainError(msg)
    if cutoff < series_cutoff(x):
        logger.warning(f"cutoff {cutoff} is inadmissible at x={x} (needs {series_cutoff(x)})")
    n = np.arange(cutoff + 1, dtype=np.float64)
    odd_powers = x ** (2 * n + 1)
    theta_odd = np.sum(x ** ((2 * n + 1) ** 2 / 4))
    theta_even = 0.5 + np.sum(x ** (n[1:] ** 2))
    lambert = np.sum(odd_powers / (1 + odd_powers) ** 2)
    return float(2 * theta_odd**4 - theta_even**4 + 3 * lambert)


def g_lower(x: Real) -> Real:
    """Closed-form lower bound 2x - (1/2 + x + x^4/(1-x))^4 + 3x/(1+x)^2."""
    return 2 * x - (Fraction(1, 2) + x + x**4 / (1 - x)) ** 4 + 3 * x / (1 + x) ** 2


def g_upper(x: Real) -> Real:
    """Closed-form upper bound 2x/(1-x^2)^4 - (1/2 + x)^4 + 3x/(1-x^2)."""
    return 2 * x / (1 - x**2) ** 4 - (Fraction(1, 2) + x) ** 4 + 3 * x / (1 - x**2)


def g_bounds(x: Real) -> tuple[Real, Real]:
    """Return (g_lower(x), g_upper(x)) for 0 < x < 1/2; exact when x is a Fraction."""
    if not 0 < x < Fraction(1, 2):
        msg = f"closed-form bounds need 0 < x < 1/2, got {x}"
        raise DomainError(msg)
    return g_lower(x), g_upper(x)


def g_is_increasing(lo: float = 0.013, hi: float = 0.015, step: float = 1e-4, cutoff: int = DEFAULT_CUTOFF) -> bool:
    """Finite-difference monotonicity audit of g on [lo, hi] at the given sample resolution."""
    grid = np.linspace(lo, hi, round((hi - lo) / step) + 1)
    values = np.array([g(float(x), cutoff) for x in grid])
    return bool(np.all(np.diff(values) > 0))


def bracket_certified(lo: Fraction = BRACKET_LO, hi: Fraction = BRACKET_HI) -> bool:
    """Exact rational check g_upper(lo) < 0 < g_lower(hi)."""
    return g_upper(lo) < 0 < g_lower(hi)


def solve_q(tol: float = 1e-14, cutoff: int = DEFAULT_CUTOFF) -> QRoot:
    """Bisect g on [13/1000, 15/1000] until the bracket is narrower than tol and |g(q)| <= tol."""
    if not tol > 0:
        msg = f"tolerance must be positive, got {tol}"
        raise DomainError(msg)
    if not bracket_certified():
        msg = "closed-form bounds do not certify a sign change on [13/1000, 15/1000]"
        raise ConsistencyError(msg)
    lo, hi = float(BRACKET_LO), float(BRACKET_HI)
    g_lo, g_hi = g(lo, cutoff), g(hi, cutoff)
    if not g_lo < 0 < g_hi:
        msg = f"g does not change sign on [{lo}, {hi}]: g(lo)={g_lo}, g(hi)={g_hi}"
        raise ConsistencyError(msg)
    iterations = 0
    mid = 0.5 * (lo + hi)
    value = g(mid, cutoff)
    while hi - lo > tol or abs(value) > tol:
        if value < 0:
            lo = mid
        else:
            hi = mid
        new_mid = 0.5 * (lo + hi)
        if new_mid in (lo, hi):
            break
        mid = new_mid
        value = g(mid, cutoff)
        iterations += 1
    if abs(value) > tol:
        msg = f"bisection stalled at float resolution with |g(q)|={abs(value)} > {tol}"
        raise ConsistencyError(msg)
    logger.info(f"Solved q={mid!r} in {iterations} bisection steps (|g(q)|={abs(value):.3e})")
    return QRoot(
        q=mid,
        residual=abs(value),
        bracket=(lo, hi),
        certified_bracket=(bracket_label(BRACKET_LO), bracket_label(BRACKET_HI)),
        series_cutoff=cutoff,
        iterations=iterations,
    )
