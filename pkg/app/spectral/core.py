"""Weighted l1 sequence space over the odd-odd sine basis.

A field stores the coefficients of P_{m,n}(tau, x) = sin((2m+1) tau) sin((2n+1) x) as a dense, trimmed, read-only
numpy array (rows are temporal modes m, columns spatial modes n) together with a tail budget: a certified upper bound
on the weighted norm of every mode that was discarded on the way. All operations are pure and return new fields.

Products are computed by direct 2D convolution of "signed" coefficient arrays. Using the reflection
P_{-m-1,n} = -P_{m,n} in each axis, a sine series sum_{i>=0} c_i sin((2i+1) t) extends to an antisymmetric sequence
S over all integers i, and the product of three such series has the extended coefficients (1/16) S_u * S_v * S_w
with index i1 + i2 + i3 + 1.
"""

from collections.abc import Iterator, Mapping
from dataclasses import dataclass, field
from enum import StrEnum
from fractions import Fraction
from functools import lru_cache

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy.signal import convolve2d

from app.core.errors import ConfigurationError, DomainError
from app.core.models import FieldPayload, ModePayload

DEFAULT_RHO = Fraction(1001, 1000)


@dataclass(frozen=True, order=True)
class ModeIndex:
    """Canonical label (m, n) of the basis function P_{m,n}."""

    m: int
    n: int

    def __post_init__(self) -> None:
        """Reject negative indices; signed shifts go through canonicalize."""
        if self.m < 0 or self.n < 0:
            msg = f"ModeIndex requires m, n >= 0, got ({self.m}, {self.n})"
            raise DomainError(msg)


@lru_cache(maxsize=64)
def _weight_powers(rho: Fraction, size: int) -> NDArray[np.float64]:
    """Return r**i for i = 0..size-1 with r = rho**2, by repeated multiplication."""
    powers = np.ones(size, dtype=np.float64)
    if size > 1:
        powers[1:] = np.cumprod(np.full(size - 1, float(rho * rho)))
    powers.setflags(write=False)
    return powers


@dataclass(frozen=True)
class WeightConfig:
    """Weight base rho of the norm sum rho^{2(m+n+1)} |c_{m,n}|."""

    rho: Fraction = DEFAULT_RHO

    def __post_init__(self) -> None:
        """Check rho > 1."""
        if self.rho <= 1:
            msg = f"weight base rho must exceed 1, got {self.rho}"
            raise DomainError(msg)

    def weight(self, m: int, n: int) -> float:
        """Weight rho^{2(m+n+1)} of a single mode."""
        return float(_weight_powers(self.rho, m + n + 2)[m + n + 1])

    def weights(self, shape: tuple[int, int]) -> NDArray[np.float64]:
        """Weight array over the box [0, rows) x [0, cols)."""
        rows, cols = shape
        powers = _weight_powers(self.rho, rows + cols + 1)
        return powers[np.add.outer(np.arange(rows), np.arange(cols)) + 1]

    @property
    def label(self) -> str:
        """Rational rendering used by the JSON schema."""
        return f"{self.rho.numerator}/{self.rho.denominator}"


DEFAULT_WEIGHT = WeightConfig()


class Subspace(StrEnum):
    """Named mode sets: Y1 = span{P00, P01, P10}, Y2 = span{P_{m,n}: m, n <= 3}; Z1, Z2 are the complements."""

    Y1 = "Y1"
    Y2 = "Y2"
    Z1 = "Z1"
    Z2 = "Z2"

    def mask(self, shape: tuple[int, int]) -> NDArray[np.bool_]:
        """Boolean membership mask over a coefficient box."""
        rows, cols = np.indices(shape)
        if self in (Subspace.Y1, Subspace.Z1):
            inside = rows + cols <= 1
        else:
            inside = (rows <= 3) & (cols <= 3)  # noqa: PLR2004
        return inside if self in (Subspace.Y1, Subspace.Y2) else ~inside

    @property
    def is_complement(self) -> bool:
        """True for Z1 and Z2."""
        return self in (Subspace.Z1, Subspace.Z2)


def _trim(coeffs: NDArray[np.float64]) -> NDArray[np.float64]:
    nonzero = np.nonzero(coeffs)
    if nonzero[0].size == 0:
        return np.zeros((0, 0), dtype=np.float64)
    return coeffs[: nonzero[0].max() + 1, : nonzero[1].max() + 1]


def _pad(coeffs: NDArray[np.float64], shape: tuple[int, int]) -> NDArray[np.float64]:
    out = np.zeros(shape, dtype=np.float64)
    out[: coeffs.shape[0], : coeffs.shape[1]] = coeffs
    return out


@dataclass(frozen=True, eq=False)
class SpectralField:
    """Finite element of the weighted l1 space plus a tail budget for discarded modes."""

    coeffs: NDArray[np.float64]
    tail: float = 0.0
    weight: WeightConfig = field(default=DEFAULT_WEIGHT)

    def __post_init__(self) -> None:
        """Normalize storage: 2D float64, trimmed to the last nonzero row and column, read-only."""
        array = np.asarray(self.coeffs, dtype=np.float64)
        if array.ndim != 2:  # noqa: PLR2004
            msg = f"coefficients must form a 2D array, got ndim={array.ndim}"
            raise DomainError(msg)
        if not np.isfinite(array).all():
            msg = "coefficients must be finite"
            raise DomainError(msg)
        if not self.tail >= 0.0:
            msg = f"tail budget must be non-negative, got {self.tail}"
            raise DomainError(msg)
        array = np.array(_trim(array), dtype=np.float64)
        array.setflags(write=False)
        object.__setattr__(self, "coeffs", array)
        object.__setattr__(self, "tail", float(self.tail))

    @classmethod
    def zero(cls, weight: WeightConfig = DEFAULT_WEIGHT) -> "SpectralField":
        """The empty field with zero tail."""
        return cls(np.zeros((0, 0)), 0.0, weight)

    @classmethod
    def from_modes(
        cls,
        modes: Mapping[tuple[int, int] | ModeIndex, float],
        tail: float = 0.0,
        weight: WeightConfig = DEFAULT_WEIGHT,
    ) -> "SpectralField":
        """Build a field from a mode map; signed keys are canonicalized and accumulated."""
        entries: list[tuple[int, int, float]] = []
        for key, value in modes.items():
            mu, nu = (key.m, key.n) if isinstance(key, ModeIndex) else key
            mode, sign = canonicalize(mu, nu)
            entries.append((mode.m, mode.n, sign * float(value)))
        if not entries:
            return cls(np.zeros((0, 0)), tail, weight)
        rows = max(e[0] for e in entries) + 1
        cols = max(e[1] for e in entries) + 1
        coeffs = np.zeros((rows, cols), dtype=np.float64)
        for m, n, value in entries:
            coeffs[m, n] += value
        return cls(coeffs, tail, weight)

    @property
    def shape(self) -> tuple[int, int]:
        """Shape of the stored coefficient box."""
        return self.coeffs.shape

    @property
    def is_empty(self) -> bool:
        """True when no coefficient is stored (the tail may still be positive)."""
        return self.coeffs.size == 0

    def coefficient(self, m: int, n: int) -> float:
        """Coefficient of P_{m,n}; zero outside the stored box."""
        if m < self.coeffs.shape[0] and n < self.coeffs.shape[1]:
            return float(self.coeffs[m, n])
        return 0.0

    def items(self) -> Iterator[tuple[ModeIndex, float]]:
        """Nonzero modes in lexicographic (m, n) order."""
        rows, cols = np.nonzero(self.coeffs)
        for m, n in zip(rows.tolist(), cols.tolist(), strict=True):
            yield ModeIndex(m, n), float(self.coeffs[m, n])

    def as_dict(self) -> dict[tuple[int, int], float]:
        """Plain {(m, n): c} view of the nonzero modes."""
        return {(mode.m, mode.n): value for mode, value in self.items()}

    def representative(self) -> "SpectralField":
        """Same coefficients with the tail budget dropped."""
        return SpectralField(self.coeffs, 0.0, self.weight)

    def with_tail(self, tail: float) -> "SpectralField":
        """Same coefficients with a replaced tail budget."""
        return SpectralField(self.coeffs, tail, self.weight)


def canonicalize(mu: int, nu: int) -> tuple[ModeIndex, int]:
    """Reduce a signed index to canonical form using P_{-m,n} = -P_{m-1,n} in each axis independently."""
    sign = 1
    if mu < 0:
        mu, sign = -mu - 1, -sign
    if nu < 0:
        nu, sign = -nu - 1, -sign
    return ModeIndex(mu, nu), sign


def canonicalize_array(mu: ArrayLike, nu: ArrayLike) -> tuple[NDArray[np.int64], NDArray[np.int64], NDArray[np.int64]]:
    """Vectorized canonicalize: returns (m, n, sign) arrays."""
    mu_arr = np.asarray(mu, dtype=np.int64)
    nu_arr = np.asarray(nu, dtype=np.int64)
    sign = np.where(mu_arr < 0, -1, 1) * np.where(nu_arr < 0, -1, 1)
    m = np.where(mu_arr < 0, -mu_arr - 1, mu_arr)
    n = np.where(nu_arr < 0, -nu_arr - 1, nu_arr)
    return m, n, sign.astype(np.int64)


def _same_weight(*fields: SpectralField) -> WeightConfig:
    weight = fields[0].weight
    for other in fields[1:]:
        if other.weight != weight:
            msg = f"weight mismatch: rho={weight.rho} vs rho={other.weight.rho}"
            raise ConfigurationError(msg)
    return weight


def coefficient_norm(v: SpectralField) -> float:
    """Weighted norm of the stored coefficients only."""
    if v.is_empty:
        return 0.0
    return float(np.sum(v.weight.weights(v.shape) * np.abs(v.coeffs)))


def norm(v: SpectralField) -> float:
    """Weighted l1 norm sum rho^{2(m+n+1)} |c_{m,n}| plus the tail budget."""
    return coefficient_norm(v) + v.tail


def linear_combine(a: float, u: SpectralField, b: float, v: SpectralField) -> SpectralField:
    """Coefficient-wise a*u + b*v with tail |a| u.tail + |b| v.tail."""
    weight = _same_weight(u, v)
    shape = (max(u.shape[0], v.shape[0]), max(u.shape[1], v.shape[1]))
    coeffs = a * _pad(u.coeffs, shape) + b * _pad(v.coeffs, shape)
    return SpectralField(coeffs, abs(a) * u.tail + abs(b) * v.tail, weight)


def _signed(coeffs: NDArray[np.float64]) -> NDArray[np.float64]:
    # index i <-> frequency 2i+1, offset -rows (resp. -cols)
    rows = np.concatenate([-coeffs[::-1, :], coeffs], axis=0)
    return np.concatenate([-rows[:, ::-1], rows], axis=1)


def triple_product(u: SpectralField, v: SpectralField, w: SpectralField) -> SpectralField:
    """Pointwise product u*v*w expanded in the P basis.

    The tail is the coarse product rule u.tail |v||w| + |u| v.tail |w| + |u||v| w.tail, with norms taken including
    tails and evaluated left to right.
    """
    weight = _same_weight(u, v, w)
    nu, nv, nw = norm(u), norm(v), norm(w)
    tail = u.tail * nv * nw + nu * v.tail * nw + nu * nv * w.tail
    if u.is_empty or v.is_empty or w.is_empty:
        return SpectralField(np.zeros((0, 0)), tail, weight)
    full = convolve2d(convolve2d(_signed(u.coeffs), _signed(v.coeffs)), _signed(w.coeffs))
    rows = u.shape[0] + v.shape[0] + w.shape[0]
    cols = u.shape[1] + v.shape[1] + w.shape[1]
    return SpectralField(full[rows - 1 :, cols - 1 :] / 16.0, tail, weight)


def evaluate(v: SpectralField, tau: ArrayLike, x: ArrayLike) -> float | NDArray[np.float64]:
    """Sum of c_{m,n} sin((2m+1) tau) sin((2n+1) x) over the stored modes; broadcasts over tau and x."""
    tau_arr, x_arr = np.broadcast_arrays(np.asarray(tau, dtype=np.float64), np.asarray(x, dtype=np.float64))
    if v.is_empty:
        values = np.zeros(tau_arr.shape)
    else:
        temporal = np.sin(tau_arr[..., None] * (2 * np.arange(v.shape[0]) + 1))
        spatial = np.sin(x_arr[..., None] * (2 * np.arange(v.shape[1]) + 1))
        values = np.einsum("...m,mn,...n->...", temporal, v.coeffs, spatial)
    if values.ndim == 0:
        return float(values)
    return values


def project(v: SpectralField, subspace: Subspace) -> SpectralField:
    """Keep the modes of a subspace; the tail budget follows the complement part."""
    coeffs = np.where(subspace.mask(v.shape), v.coeffs, 0.0) if not v.is_empty else v.coeffs
    return SpectralField(coeffs, v.tail if subspace.is_complement else 0.0, v.weight)


def rescale(v: SpectralField, m: int, n: int) -> SpectralField:
    """Map u(tau, x) to n u(m tau, n x) for odd positive m, n."""
    if m < 1 or n < 1 or m % 2 == 0 or n % 2 == 0:
        msg = f"rescale needs odd positive factors, got ({m}, {n}): image not representable in X"
        raise DomainError(msg)
    if (m, n) == (1, 1):
        return v
    if v.tail > 0.0:
        msg = "rescale cannot transport a tail budget; rescale the representative instead"
        raise DomainError(msg)
    if v.is_empty:
        return v
    rows = (m * (2 * np.arange(v.shape[0]) + 1) - 1) // 2
    cols = (n * (2 * np.arange(v.shape[1]) + 1) - 1) // 2
    coeffs = np.zeros((rows[-1] + 1, cols[-1] + 1))
    coeffs[np.ix_(rows, cols)] = n * v.coeffs
    return SpectralField(coeffs, 0.0, v.weight)


def focusing_transform(v: SpectralField, omega: float) -> SpectralField:
    """Map u(tau, x) to u(x, tau)/omega: swaps (m, n) and scales by 1/omega."""
    if not omega > 0:
        msg = f"focusing transform needs omega > 0, got {omega}"
        raise DomainError(msg)
    return SpectralField(v.coeffs.T / omega, v.tail / omega, v.weight)


def truncate(v: SpectralField, max_order: int, floor: float = 0.0) -> SpectralField:
    """Fold modes with m+n+1 > max_order, or weighted magnitude below floor, into the tail budget."""
    if v.is_empty:
        return v
    weighted = v.weight.weights(v.shape) * np.abs(v.coeffs)
    rows, cols = np.indices(v.shape)
    dropped = (v.coeffs != 0.0) & ((rows + cols + 1 > max_order) | (weighted < floor))
    if not dropped.any():
        return v
    folded = float(np.sum(weighted[dropped]))
    return SpectralField(np.where(dropped, 0.0, v.coeffs), v.tail + folded, v.weight)


def field_to_payload(v: SpectralField) -> FieldPayload:
    """Shared JSON schema of a field."""
    modes = [ModePayload(m=mode.m, n=mode.n, c=value) for mode, value in v.items()]
    return FieldPayload(rho=v.weight.label, tail=v.tail, modes=modes)


def field_from_payload(payload: FieldPayload) -> SpectralField:
    """Inverse of field_to_payload; duplicate modes accumulate."""
    weight = WeightConfig(Fraction(payload.rho))
    modes: dict[tuple[int, int], float] = {}
    for mode in payload.modes:
        modes[mode.m, mode.n] = modes.get((mode.m, mode.n), 0.0) + mode.c
    return SpectralField.from_modes(modes, payload.tail, weight)
