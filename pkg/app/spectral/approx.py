"""First-order approximate solution u_k and the closed-form coefficient families built on it.

    u_k = sqrt(128/k) sum_n f_n P_{n,n},    f_n = q^{n+1/2} / (1 + q^{2n+1})
    u_k^3 = (128/k)^{3/2} sum_{m,n} b_{m,n} P_{m,n}
    u_k^2 P_{m,n} = sum_{mu,nu} c_{mu,nu} P_{m+mu, n+nu}

b and c are evaluated from q-power forms, never from sinh of (m + 1/2) ln q.
"""

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np
from numpy.typing import NDArray

from app.core.errors import ConsistencyError, DomainError
from app.spectral.core import DEFAULT_WEIGHT, SpectralField, WeightConfig

BETA0_INTERVAL = (Fraction(113, 1000), Fraction(135, 1000))
BETA1_INTERVAL = (Fraction(38, 1000), Fraction(45, 1000))
Q_RANGE = (0.013, 0.015)
MIN_NF = 4


@dataclass(frozen=True)
class FrequencyContext:
    """Frequency Omega = (2k+1)/(2k) of the sought solution."""

    k: int

    def __post_init__(self) -> None:
        """Require k >= 1."""
        if self.k < 1:
            msg = f"k must be a positive integer, got {self.k}"
            raise DomainError(msg)

    @cached_property
    def omega(self) -> Fraction:
        """Exact frequency (2k+1)/(2k)."""
        return Fraction(2 * self.k + 1, 2 * self.k)

    @property
    def omega_float(self) -> float:
        """Frequency as a float."""
        return float(self.omega)

    @property
    def l_inv_norm(self) -> Fraction:
        """Uniform bound 4k^2/(4k-1) on the columns of the inverse wave operator."""
        return Fraction(4 * self.k**2, 4 * self.k - 1)


@dataclass(frozen=True)
class ApproxCoefficients:
    """q, the sequence f_0..f_{n_f}, beta0, beta1 and the bound on the omitted f tail."""

    q: float
    f: tuple[float, ...]
    beta0: float
    beta1: float
    n_f: int
    f_tail: float

    @property
    def f_array(self) -> NDArray[np.float64]:
        """f as a numpy array."""
        return np.asarray(self.f, dtype=np.float64)

    def f_value(self, n: int) -> float:
        """Stored f_n, or zero past the cutoff."""
        return self.f[n] if 0 <= n <= self.n_f else 0.0


def f_damping(q: float | Fraction, n: int) -> float | Fraction:
    """1/(1+q^{2n+1}), the factor f_n carries below q^{n+1/2}; exact when q is a Fraction.

    For n >= 4 the float value rounds to 1, so f_n < q^{n+1/2} is only strict in rationals.
    """
    return 1 / (1 + q ** (2 * n + 1))


def f_sequence(q: float, count: int) -> NDArray[np.float64]:
    """f_n = q^{n+1/2}/(1+q^{2n+1}) for n = 0..count-1."""
    n = np.arange(count, dtype=np.float64)
    return q ** (n + 0.5) / (1 + q ** (2 * n + 1))


def build_coeffs(q: float, n_f: int = 20) -> ApproxCoefficients:
    """Tabulate f_0..f_{n_f} and the beta constants; both betas must land in their certified intervals."""
    if not Q_RANGE[0] < q < Q_RANGE[1]:
        msg = f"q={q} lies outside the certified range (0.013, 0.015)"
        raise DomainError(msg)
    if n_f < MIN_NF:
        msg = f"n_f must be at least {MIN_NF}, got {n_f}"
        raise DomainError(msg)
    f = f_sequence(q, n_f + 1)
    squares = float(np.sum(f**2))
    neighbours = float(np.sum(f[:-1] * f[1:]))
    beta0 = 4 * squares + 2 * neighbours + 5 * f[0] ** 2
    beta1 = 2 * neighbours + 3 * f[0] ** 2
    if not BETA0_INTERVAL[0] < beta0 < BETA0_INTERVAL[1] or not BETA1_INTERVAL[0] < beta1 < BETA1_INTERVAL[1]:
        msg = f"beta constants left their intervals: beta0={beta0}, beta1={beta1}"
        raise ConsistencyError(msg)
    return ApproxCoefficients(
        q=q,
        f=tuple(float(v) for v in f),
        beta0=float(beta0),
        beta1=float(beta1),
        n_f=n_f,
        f_tail=q ** (n_f + 1.5) / (1 - q),
    )


@dataclass(frozen=True)
class CoefficientBounds:
    """Elementary enclosures of beta0, beta1 and sqrt(k) ||u_k|| in terms of q alone."""

    beta0_lower: float | Fraction
    beta0_upper: float | Fraction
    beta1_lower: float | Fraction
    beta1_upper: float | Fraction
    uk_lower: float
    uk_upper: float


def coefficient_bounds(q: float | Fraction, rho: Fraction = DEFAULT_WEIGHT.rho) -> CoefficientBounds:
    """Closed-form enclosures; the beta bounds are exact rationals when q is a Fraction."""
    geometric = q / (1 - q**2)
    shifted = q**2 / (1 - q**2)
    beta0_upper = 4 * geometric + 2 * shifted + 5 * q / (1 + q) ** 2
    beta0_lower = (4 * geometric + 2 * shifted + 5 * q) / (1 + q) ** 2
    beta1_upper = 2 * shifted + 3 * q / (1 + q) ** 2
    beta1_lower = (2 * shifted + 3 * q) / (1 + q) ** 2
    rho_sq = float(rho) ** 2
    root = math.sqrt(128 * float(q))
    return CoefficientBounds(
        beta0_lower=beta0_lower,
        beta0_upper=beta0_upper,
        beta1_lower=beta1_lower,
        beta1_upper=beta1_upper,
        uk_lower=root * rho_sq / (1 + float(q)),
        uk_upper=root * rho_sq / (1 - rho_sq**2 * float(q)),
    )


@lru_cache(maxsize=32)
def build_uk(ctx: FrequencyContext, coeffs: ApproxCoefficients, weight: WeightConfig = DEFAULT_WEIGHT) -> SpectralField:
    """u_k with diagonal coefficients sqrt(128/k) f_n and the geometric majorant of the omitted diagonal as tail."""
    scale = math.sqrt(128 / ctx.k)
    coeffs_array = np.diag(scale * coeffs.f_array)
    rho4 = float(weight.rho) ** 4
    n = coeffs.n_f
    tail = scale * float(weight.rho) ** (2 * (2 * n + 3)) * coeffs.q ** (n + 1.5) / (1 - rho4 * coeffs.q)
    return SpectralField(coeffs_array, tail, weight)


def b_table(coeffs: ApproxCoefficients, box: int) -> NDArray[np.float64]:
    """b_{m,n} for 0 <= m, n <= box."""
    q = coeffs.q
    m, n = np.indices((box + 1, box + 1))
    hi = np.maximum(m, n).astype(np.float64)
    lo = np.minimum(m, n).astype(np.float64)
    lead = q ** (hi + 0.5)
    gap = q ** (hi - lo)
    across = q ** (hi + lo + 1)
    top = q ** (2 * hi + 1)
    odd = -(3 / 32) * (hi + lo + 1) * lead / (1 + gap - across - top)
    with np.errstate(divide="ignore", invalid="ignore"):
        even = (3 / 32) * (hi - lo) * lead / (1 - gap + across - top)
    diagonal = (2 * hi + 1) ** 2 * f_sequence(q, box + 1)[m] / 128
    return np.where(m == n, diagonal, np.where((m - n) % 2 == 1, odd, even))


@lru_cache(maxsize=4096)
def b_coeff(m: int, n: int, coeffs: ApproxCoefficients) -> float:
    """b_{m,n}, the coefficient of P_{m,n} in (sum_n f_n P_{n,n})^3."""
    if m < 0 or n < 0:
        msg = f"b_{{m,n}} needs m, n >= 0, got ({m}, {n})"
        raise DomainError(msg)
    q = coeffs.q
    hi, lo = max(m, n), min(m, n)
    if m == n:
        return (2 * m + 1) ** 2 * float(f_sequence(q, m + 1)[m]) / 128
    lead = q ** (hi + 0.5)
    if (hi - lo) % 2 == 1:
        return -(3 / 32) * (hi + lo + 1) * lead / (1 + q ** (hi - lo) - q ** (hi + lo + 1) - q ** (2 * hi + 1))
    return (3 / 32) * (hi - lo) * lead / (1 - q ** (hi - lo) + q ** (hi + lo + 1) - q ** (2 * hi + 1))


def b_series_weighted_sum(coeffs: ApproxCoefficients, box: int = 40, weight: WeightConfig = DEFAULT_WEIGHT) -> float:
    """Sum of rho^{2(m+n+1)} |b_{m,n}| over m, n <= box."""
    table = b_table(coeffs, box)
    return float(np.sum(weight.weights(table.shape) * np.abs(table)))


def c_coeff(mu: int, nu: int, ctx: FrequencyContext, coeffs: ApproxCoefficients) -> float:
    """c_{mu,nu}: the coefficient of P_{m+mu, n+nu} in u_k^2 P_{m,n}; depends only on |mu|, |nu|."""
    a, b = abs(mu), abs(nu)
    f = coeffs.f_value
    if a == 0 and b == 0:
        value = 0.25 * float(np.sum(coeffs.f_array**2))
    elif a == b:
        shifted = sum(f(j) * f(j + a) for j in range(coeffs.n_f + 1))
        folded = sum(f(j) * f(a - 1 - j) for j in range(a))
        value = (2 * shifted + folded) / 16
    elif b == 0 or a == 0:
        axis = a + b
        value = -f((axis - 1) // 2) ** 2 / 8 if axis % 2 == 1 else 0.0
    elif (a - b) % 2 == 1:
        value = -f((a + b - 1) // 2) * f((abs(a - b) - 1) // 2) / 8
    else:
        value = 0.0
    return 128 / ctx.k * value


def c_table(ctx: FrequencyContext, coeffs: ApproxCoefficients, cutoff: int) -> NDArray[np.float64]:
    """c_{a,b} for 0 <= a, b <= cutoff (a = |mu|, b = |nu|)."""
    size = cutoff + 1
    f = np.zeros(2 * size + 1)
    stored = coeffs.f_array[: min(coeffs.n_f + 1, f.size)]
    f[: stored.size] = stored
    a, b = np.indices((size, size))
    table = np.zeros((size, size))

    mixed = (a >= 1) & (b >= 1) & (a != b) & ((a - b) % 2 == 1)
    table[mixed] = -f[(a[mixed] + b[mixed] - 1) // 2] * f[(np.abs(a[mixed] - b[mixed]) - 1) // 2] / 8

    axis = np.arange(1, size, 2)
    table[axis, 0] = -f[(axis - 1) // 2] ** 2 / 8
    table[0, axis] = table[axis, 0]

    shifted = np.correlate(stored, stored, mode="full")[stored.size - 1 :]
    folded = np.convolve(stored, stored)
    diag = np.arange(1, size)
    diagonal = np.zeros(diag.size)
    within = diag < shifted.size
    diagonal[within] += 2 * shifted[diag[within]]
    within = diag - 1 < folded.size
    diagonal[within] += folded[diag[within] - 1]
    table[diag, diag] = diagonal / 16
    table[0, 0] = 0.25 * float(np.sum(stored**2))
    return 128 / ctx.k * table
