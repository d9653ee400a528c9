"""Linear machinery of the fixed-point formulation.

    L_k P_{m,n} = [-(2k+1)^2 (2m+1)^2 + 4k^2 (2n+1)^2] / (4k^2) P_{m,n}
    Lambda_k h  = u_k^2 h
    N_k(h)      = -L_k^{-1} (u_k + A h)^3 - u_k + (I - A) h
    H_k(h)      = -3 L_k^{-1} (u_k^2 A h) + h - A h

The eigenvalue numerator factors as (2k(2n+1) - (2k+1)(2m+1)) (2k(2n+1) + (2k+1)(2m+1)); the first factor is odd,
so L_k is invertible on every mode.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray

from app.core.errors import DomainError
from app.spectral.approx import ApproxCoefficients, FrequencyContext, build_uk, c_table
from app.spectral.core import (
    DEFAULT_WEIGHT,
    ModeIndex,
    SpectralField,
    WeightConfig,
    canonicalize_array,
    coefficient_norm,
    linear_combine,
    norm,
    triple_product,
)

type Real = float | Fraction


def l_eigenvalue_factors(
    ctx: FrequencyContext, m: ArrayLike, n: ArrayLike
) -> tuple[NDArray[np.int64], NDArray[np.int64]]:
    """Exact integer factors (difference, sum) of 4k^2 times the eigenvalue."""
    k = ctx.k
    temporal = (2 * k + 1) * (2 * np.asarray(m, dtype=np.int64) + 1)
    spatial = 2 * k * (2 * np.asarray(n, dtype=np.int64) + 1)
    return spatial - temporal, spatial + temporal


def l_eigenvalue_numerator(ctx: FrequencyContext, m: int, n: int) -> int:
    """4k^2 times the eigenvalue of P_{m,n}, in exact integer arithmetic."""
    k = ctx.k
    return 4 * k**2 * (2 * n + 1) ** 2 - (2 * k + 1) ** 2 * (2 * m + 1) ** 2


def l_eigenvalue(ctx: FrequencyContext, m: int, n: int) -> float:
    """Eigenvalue -Omega^2 (2m+1)^2 + (2n+1)^2 of L_k on P_{m,n}."""
    return l_eigenvalue_numerator(ctx, m, n) / (4 * ctx.k**2)


def l_inv_values(ctx: FrequencyContext, m: ArrayLike, n: ArrayLike) -> NDArray[np.float64]:
    """Inverse eigenvalues 4k^2/((2k(2n+1))^2 - ((2k+1)(2m+1))^2), vectorized over canonical indices."""
    diff, total = l_eigenvalue_factors(ctx, m, n)
    return (4.0 * ctx.k**2) / (diff.astype(np.float64) * total.astype(np.float64))


@lru_cache(maxsize=128)
def _inverse_box(ctx: FrequencyContext, rows: int, cols: int) -> NDArray[np.float64]:
    m, n = np.indices((rows, cols))
    values = l_inv_values(ctx, m, n)
    values.setflags(write=False)
    return values


def apply_L(ctx: FrequencyContext, v: SpectralField) -> SpectralField:
    """Forward wave operator on a tail-free field (L_k is unbounded, so tails cannot be carried)."""
    if v.tail > 0.0:
        msg = "apply_L needs a tail-free field; pass v.representative()"
        raise DomainError(msg)
    if v.is_empty:
        return v
    return SpectralField(v.coeffs / _inverse_box(ctx, *v.shape), 0.0, v.weight)


def apply_L_inv(ctx: FrequencyContext, v: SpectralField) -> SpectralField:
    """Divide every coefficient by its eigenvalue; the tail grows by at most 4k^2/(4k-1)."""
    tail = v.tail * float(ctx.l_inv_norm)
    if v.is_empty:
        return SpectralField(v.coeffs, tail, v.weight)
    return SpectralField(v.coeffs * _inverse_box(ctx, *v.shape), tail, v.weight)


def l_inv_column_bound(ctx: FrequencyContext, m: int, n: int) -> float:
    """4k^2/(2 max{2k(2n+1), (2k+1)(2m+1)} - 1), an upper bound on |1/eigenvalue| of P_{m,n}."""
    k = ctx.k
    return 4 * k**2 / (2 * max(2 * k * (2 * n + 1), (2 * k + 1) * (2 * m + 1)) - 1)


def l_inv_signed_bound(ctx: FrequencyContext, mu: int, nu: int) -> float:
    """Column bound for a signed index: 4k^2/(2 max{2k|2nu+1|, (2k+1)|2mu+1|} - 1)."""
    k = ctx.k
    return 4 * k**2 / (2 * max(2 * k * abs(2 * nu + 1), (2 * k + 1) * abs(2 * mu + 1)) - 1)


def l_inv_weak_bound(ctx: FrequencyContext, mu: int, nu: int) -> float:
    """Weaker signed bound 4k^2/(4k max{|2mu+1|, |2nu+1|} - 1)."""
    k = ctx.k
    return 4 * k**2 / (4 * k * max(abs(2 * mu + 1), abs(2 * nu + 1)) - 1)


@dataclass(frozen=True)
class OperatorAConstants:
    """First row (a00, a01, a01) of the 3x3 block of A on span{P00, P01, P10}."""

    a00: Real
    a01: Real

    @classmethod
    def from_betas(cls, beta0: Real, beta1: Real) -> "OperatorAConstants":
        """a00 = -1/(24 beta0 - 1), a01 = 24 beta1/(24 beta0 - 1); exact when the betas are Fractions."""
        denominator = 24 * beta0 - 1
        if not denominator > 0:
            msg = f"24*beta0 - 1 must be positive, got beta0={beta0}"
            raise DomainError(msg)
        return cls(a00=-1 / denominator, a01=24 * beta1 / denominator)

    @classmethod
    def from_coeffs(cls, coeffs: ApproxCoefficients) -> "OperatorAConstants":
        """Constants from a coefficient record."""
        return cls.from_betas(coeffs.beta0, coeffs.beta1)

    @property
    def a02(self) -> Real:
        """Third entry of the first row; equal to a01."""
        return self.a01


@dataclass(frozen=True)
class Preconditioner:
    """A = block on Y1 plus the identity on Z1."""

    constants: OperatorAConstants
    weight: WeightConfig = DEFAULT_WEIGHT

    @property
    def _r2(self) -> float:
        return float(self.weight.rho) ** 2

    def column_ratio(self, mode: ModeIndex) -> float:
        """||A P|| / ||P|| for one basis vector."""
        a00, a01 = float(self.constants.a00), float(self.constants.a01)
        if (mode.m, mode.n) == (0, 0):
            return abs(a00)
        if (mode.m, mode.n) in ((0, 1), (1, 0)):
            return (abs(a01) * self._r2 + self._r2**2) / self._r2**2
        return 1.0

    @property
    def norm_bound(self) -> float:
        """Operator norm: the largest column ratio."""
        return max(1.0, *(self.column_ratio(ModeIndex(m, n)) for m, n in ((0, 0), (0, 1), (1, 0))))

    @property
    def inverse_norm_bound(self) -> float:
        """Operator norm of the inverse block."""
        a00, a01 = float(self.constants.a00), float(self.constants.a01)
        return max(1.0, 1 / abs(a00), abs(a01 / a00) / self._r2 + 1)

    @property
    def complement_norm_bound(self) -> float:
        """Operator norm of I - A."""
        a00, a01 = float(self.constants.a00), float(self.constants.a01)
        return max(abs(1 - a00), abs(a01) / self._r2)

    def _block(self, h: SpectralField) -> tuple[float, float, float]:
        return h.coefficient(0, 0), h.coefficient(0, 1), h.coefficient(1, 0)

    def _with_p00(self, h: SpectralField, value: float, tail: float) -> SpectralField:
        rows, cols = max(h.shape[0], 1), max(h.shape[1], 1)
        coeffs = np.zeros((rows, cols))
        coeffs[: h.shape[0], : h.shape[1]] = h.coeffs
        coeffs[0, 0] = value
        return SpectralField(coeffs, tail, self.weight)

    def apply(self, h: SpectralField) -> SpectralField:
        """A h: new c00 = a00 c00 + a01 (c01 + c10), identity elsewhere."""
        c00, c01, c10 = self._block(h)
        value = float(self.constants.a00) * c00 + float(self.constants.a01) * (c01 + c10)
        return self._with_p00(h, value, h.tail * self.norm_bound)

    def apply_inverse(self, h: SpectralField) -> SpectralField:
        """A^{-1} h via back substitution on the upper-triangular block."""
        c00, c01, c10 = self._block(h)
        value = (c00 - float(self.constants.a01) * (c01 + c10)) / float(self.constants.a00)
        return self._with_p00(h, value, h.tail * self.inverse_norm_bound)

    def apply_I_minus_A(self, h: SpectralField) -> SpectralField:
        """(I - A) h, which lives on P00 alone."""
        c00, c01, c10 = self._block(h)
        value = (1 - float(self.constants.a00)) * c00 - float(self.constants.a01) * (c01 + c10)
        coeffs = np.array([[value]])
        return SpectralField(coeffs, h.tail * self.complement_norm_bound, self.weight)


def build_A(constants: OperatorAConstants, weight: WeightConfig = DEFAULT_WEIGHT) -> Preconditioner:
    """Assemble the preconditioner."""
    return Preconditioner(constants, weight)


def apply_A(A: Preconditioner, v: SpectralField) -> SpectralField:  # noqa: N803
    """A v."""
    return A.apply(v)


def alpha_coefficients(q: Real, rho: Real = DEFAULT_WEIGHT.rho) -> tuple[Real, Real, Real]:
    """(alpha0, alpha1, alpha2) of the lattice tail estimate, with p = q rho^4."""
    p = q * rho**4
    alpha0 = (1 + 2 * q - q**2) + (1 - 2 * q - q**2) * p
    alpha1 = 2 * (1 + q - q**2) - 2 * (1 + 2 * q - q**2) * p + 2 * q * p**2
    alpha2 = (1 - q**2) * (1 - p) ** 2
    return alpha0, alpha1, alpha2


def lattice_tail(ctx: FrequencyContext, q: float, l: int, weight: WeightConfig = DEFAULT_WEIGHT) -> float:  # noqa: E741
    """Closed-form bound on sum |c_{mu,nu}| rho^{4 max(|mu|,|nu|)} over |mu| > l or |nu| > l."""
    if l < 1:
        msg = f"lattice tail needs l >= 1, got {l}"
        raise DomainError(msg)
    rho = float(weight.rho)
    p = q * rho**4
    alpha0, alpha1, alpha2 = alpha_coefficients(q, rho)
    return 64 * p ** (l + 1) * (alpha2 * l**2 + alpha1 * l + alpha0) / (ctx.k * (1 - q**2) * (1 - p) ** 3)


@lru_cache(maxsize=16)
def signed_c_kernel(ctx: FrequencyContext, coeffs: ApproxCoefficients, lattice: int) -> NDArray[np.float64]:
    """c_{mu,nu} on the box |mu|, |nu| <= lattice, indexed [mu + lattice, nu + lattice]."""
    table = c_table(ctx, coeffs, lattice)
    offsets = np.abs(np.arange(-lattice, lattice + 1))
    kernel = table[np.ix_(offsets, offsets)]
    kernel.setflags(write=False)
    return kernel


def apply_lambda(
    ctx: FrequencyContext, coeffs: ApproxCoefficients, h: SpectralField
) -> SpectralField:
    """u_k^2 h by spectral convolution."""
    uk = build_uk(ctx, coeffs, h.weight)
    return triple_product(uk, uk, h)


def apply_lambda_ctable(
    ctx: FrequencyContext, coeffs: ApproxCoefficients, h: SpectralField, lattice: int = 40
) -> SpectralField:
    """u_k^2 h through the c-shift lattice truncated at |mu|, |nu| <= lattice, plus the closed-form lattice tail."""
    uk_norm = norm(build_uk(ctx, coeffs, h.weight))
    tail = h.tail * uk_norm**2 + coefficient_norm(h) * lattice_tail(ctx, coeffs.q, lattice, h.weight)
    if h.is_empty:
        return SpectralField(h.coeffs, tail, h.weight)
    kernel = signed_c_kernel(ctx, coeffs, lattice)
    offsets = np.arange(-lattice, lattice + 1)
    out = np.zeros((h.shape[0] + lattice, h.shape[1] + lattice))
    for mode, value in h.items():
        rows, _, row_sign = canonicalize_array(mode.m + offsets, np.zeros_like(offsets))
        cols, _, col_sign = canonicalize_array(mode.n + offsets, np.zeros_like(offsets))
        np.add.at(out, (rows[:, None], cols[None, :]), value * kernel * np.outer(row_sign, col_sign))
    return SpectralField(out, tail, h.weight)


def residual_N(
    ctx: FrequencyContext, coeffs: ApproxCoefficients, A: Preconditioner, h: SpectralField  # noqa: N803
) -> SpectralField:
    """N_k(h) = -L_k^{-1} (u_k + A h)^3 - u_k + (I - A) h, with the cube taken in one triple product."""
    uk = build_uk(ctx, coeffs, h.weight)
    s = linear_combine(1.0, uk, 1.0, A.apply(h))
    cube = apply_L_inv(ctx, triple_product(s, s, s))
    return linear_combine(1.0, linear_combine(-1.0, cube, -1.0, uk), 1.0, A.apply_I_minus_A(h))


def apply_H(
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    A: Preconditioner,  # noqa: N803
    h: SpectralField,
    lattice: int | None = None,
) -> SpectralField:
    """H_k(h) = -3 L_k^{-1} (u_k^2 A h) + (I - A) h; Lambda_k via convolution, or via the c lattice when given."""
    ah = A.apply(h)
    lam = apply_lambda(ctx, coeffs, ah) if lattice is None else apply_lambda_ctable(ctx, coeffs, ah, lattice)
    return linear_combine(-3.0, apply_L_inv(ctx, lam), 1.0, A.apply_I_minus_A(h))


@dataclass(frozen=True)
class ColumnEstimate:
    """||H_k P_{m,n}|| / ||P_{m,n}|| split into the truncated lattice part and its certified tail."""

    mode: ModeIndex
    truncated: float
    tail: float

    @property
    def ratio(self) -> float:
        """Total certified column ratio."""
        return self.truncated + self.tail


def h_column(
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    A: Preconditioner,  # noqa: N803
    m: int,
    n: int,
    lattice: int = 40,
) -> ColumnEstimate:
    """Column norm of H_k on P_{m,n} with the c lattice truncated at the given depth."""
    basis = SpectralField.from_modes({(m, n): 1.0}, weight=A.weight)
    column = apply_H(ctx, coeffs, A, basis, lattice)
    scale = A.weight.weight(m, n)
    return ColumnEstimate(ModeIndex(m, n), coefficient_norm(column) / scale, column.tail / scale)


def z2_uniform_bound(ctx: FrequencyContext, q: float, weight: WeightConfig = DEFAULT_WEIGHT) -> tuple[float, float]:
    """Uniform (I, J) estimates for columns P_{m,n} with m >= 4 or n >= 4; ||H_k P|| <= 3 (I + J) ||P||."""
    k = ctx.k
    rho = float(weight.rho)
    p = q * rho**4
    i_part = (
        (q + q**2 / (1 - q**2)) * 128 * k / (28 * k - 1)
        + (q + q / (1 - q**2)) * 128 * k / (36 * k - 1)
        + (q + q**2 / (1 - q**2)) * 128 * k / (44 * k - 1)
    ) * rho**4
    j_part = 256 * k * q**2 * rho**8 * sum(alpha_coefficients(q, rho)) / ((4 * k - 1) * (1 - q**2) * (1 - p) ** 3)
    return i_part, j_part
