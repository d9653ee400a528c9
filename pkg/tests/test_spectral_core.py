"""Tests for the weighted sequence space, the triple product and the field transforms."""

import math
from fractions import Fraction

import numpy as np
import pytest

from app.core.errors import ConfigurationError, DomainError
from app.spectral.core import (
    ModeIndex,
    SpectralField,
    Subspace,
    WeightConfig,
    canonicalize,
    evaluate,
    field_from_payload,
    field_to_payload,
    focusing_transform,
    linear_combine,
    norm,
    project,
    rescale,
    triple_product,
    truncate,
)

RHO_SQ = 1.001**2
ORACLE_FIELDS = 100
ORACLE_POINTS = 100
ORACLE_MODES = 9
ORACLE_TOL = 1e-10
SYMMETRY_TOL = 1e-12


def _random_field(rng: np.random.Generator) -> SpectralField:
    return SpectralField(rng.uniform(-0.1, 0.1, size=(ORACLE_MODES, ORACLE_MODES)))


def test_mode_index_rejects_negative() -> None:
    """Negative labels must go through canonicalize."""
    with pytest.raises(DomainError):
        ModeIndex(-1, 0)


def test_canonicalize_reflects_each_axis() -> None:
    """P_{-1,0} = -P_{0,0}, P_{-1,-1} = P_{0,0}, P_{-3,2} = -P_{2,2}."""
    cases = {(-1, 0): (ModeIndex(0, 0), -1), (-1, -1): (ModeIndex(0, 0), 1), (-3, 2): (ModeIndex(2, 2), -1)}
    for signed, expected in cases.items():
        if canonicalize(*signed) != expected:
            msg = f"canonicalize{signed} = {canonicalize(*signed)}, expected {expected}"
            raise AssertionError(msg)


def test_from_modes_accumulates_signed_keys() -> None:
    """A signed key lands on its canonical mode with the reflected sign."""
    field = SpectralField.from_modes({(0, 0): 1.0, (-1, 0): 0.25})
    if field.as_dict() != {(0, 0): 0.75}:
        msg = f"Expected {{(0, 0): 0.75}}, got {field.as_dict()}"
        raise AssertionError(msg)


def test_norm_of_basis_vector() -> None:
    """||P_{0,0}|| = rho^2 and ||P_{1,2}|| = rho^8."""
    if not math.isclose(norm(SpectralField.from_modes({(0, 0): 1.0})), RHO_SQ, rel_tol=1e-15):
        msg = "||P00|| should equal rho^2"
        raise AssertionError(msg)
    if not math.isclose(norm(SpectralField.from_modes({(1, 2): -2.0})), 2 * RHO_SQ**4, rel_tol=1e-14):
        msg = "||-2 P12|| should equal 2 rho^8"
        raise AssertionError(msg)


def test_weight_config_rejects_rho_at_most_one() -> None:
    """The weight base must exceed 1."""
    with pytest.raises(DomainError):
        WeightConfig(Fraction(1))


def test_linear_combine_requires_same_weight() -> None:
    """Fields with different rho cannot be combined."""
    u = SpectralField.from_modes({(0, 0): 1.0})
    v = SpectralField.from_modes({(0, 0): 1.0}, weight=WeightConfig(Fraction(11, 10)))
    with pytest.raises(ConfigurationError):
        linear_combine(1.0, u, 1.0, v)


def test_linear_combine_tail_rule() -> None:
    """Tails combine as |a| u.tail + |b| v.tail."""
    u = SpectralField.from_modes({(0, 0): 1.0}, tail=1e-3)
    v = SpectralField.from_modes({(2, 1): 1.0}, tail=2e-3)
    out = linear_combine(-2.0, u, 0.5, v)
    if not math.isclose(out.tail, 3e-3):
        msg = f"Expected tail 3e-3, got {out.tail}"
        raise AssertionError(msg)
    if out.as_dict() != {(0, 0): -2.0, (2, 1): 0.5}:
        msg = f"Unexpected coefficients {out.as_dict()}"
        raise AssertionError(msg)


def test_cube_of_lowest_mode() -> None:
    """sin^3 tau sin^3 x = (9 P00 - 3 P01 - 3 P10 + P11)/16."""
    p00 = SpectralField.from_modes({(0, 0): 1.0})
    cube = triple_product(p00, p00, p00)
    expected = {(0, 0): 9 / 16, (0, 1): -3 / 16, (1, 0): -3 / 16, (1, 1): 1 / 16}
    for mode, value in expected.items():
        if not math.isclose(cube.coefficient(*mode), value, abs_tol=1e-15):
            msg = f"coefficient {mode} = {cube.coefficient(*mode)}, expected {value}"
            raise AssertionError(msg)
    if len(cube.as_dict()) != len(expected):
        msg = f"Unexpected extra modes in {cube.as_dict()}"
        raise AssertionError(msg)


def test_triple_product_matches_pointwise_product() -> None:
    """Evaluating the product equals multiplying the evaluations, and the norm is submultiplicative."""
    rng = np.random.default_rng(7)
    for _ in range(ORACLE_FIELDS):
        u, v, w = _random_field(rng), _random_field(rng), _random_field(rng)
        tau = rng.uniform(0, 2 * math.pi, ORACLE_POINTS)
        x = rng.uniform(0, math.pi, ORACLE_POINTS)
        product = triple_product(u, v, w)
        pointwise = evaluate(u, tau, x) * evaluate(v, tau, x) * evaluate(w, tau, x)
        error = np.max(np.abs(evaluate(product, tau, x) - pointwise))
        if error > ORACLE_TOL:
            msg = f"triple product disagrees with pointwise product by {error}"
            raise AssertionError(msg)
        if norm(product) > norm(u) * norm(v) * norm(w) * (1 + 1e-12):
            msg = "norm is not submultiplicative on a sample"
            raise AssertionError(msg)


def test_triple_product_tail_rule() -> None:
    """A tail on one factor propagates as tail * |v| |w|."""
    u = SpectralField.from_modes({(0, 0): 1.0}, tail=1e-6)
    v = SpectralField.from_modes({(0, 0): 1.0})
    out = triple_product(u, v, v)
    if not math.isclose(out.tail, 1e-6 * RHO_SQ**2, rel_tol=1e-12):
        msg = f"Expected tail 1e-6 rho^4, got {out.tail}"
        raise AssertionError(msg)


def test_evaluate_symmetries_and_boundary() -> None:
    """u is odd in tau, even about tau = pi/2 and x = pi/2, and vanishes at x = 0, pi."""
    rng = np.random.default_rng(11)
    u = _random_field(rng)
    tau = rng.uniform(0, 2 * math.pi, 50)
    x = rng.uniform(0, math.pi, 50)
    base = evaluate(u, tau, x)
    checks = {
        "time parity": evaluate(u, -tau, x) + base,
        "time reflection": evaluate(u, math.pi - tau, x) - base,
        "space reflection": evaluate(u, tau, math.pi - x) - base,
        "x = 0": evaluate(u, tau, 0.0),
        "x = pi": evaluate(u, tau, math.pi),
    }
    for name, residual in checks.items():
        if np.max(np.abs(residual)) > SYMMETRY_TOL:
            msg = f"{name} violated by {np.max(np.abs(residual))}"
            raise AssertionError(msg)


def test_evaluate_scalar_returns_float() -> None:
    """Scalar inputs give a plain float."""
    value = evaluate(SpectralField.from_modes({(0, 0): 2.0}), math.pi / 2, math.pi / 2)
    if not isinstance(value, float) or not math.isclose(value, 2.0):
        msg = f"Expected 2.0 as float, got {value!r}"
        raise AssertionError(msg)


def test_project_splits_modes_and_tail() -> None:
    """Y1 keeps P00, P01, P10; Z1 keeps the rest and the tail."""
    field = SpectralField.from_modes({(0, 0): 1.0, (0, 1): 2.0, (1, 0): 3.0, (1, 1): 4.0}, tail=1e-4)
    low, high = project(field, Subspace.Y1), project(field, Subspace.Z1)
    if low.as_dict() != {(0, 0): 1.0, (0, 1): 2.0, (1, 0): 3.0} or low.tail != 0.0:
        msg = f"Unexpected Y1 projection {low.as_dict()} tail={low.tail}"
        raise AssertionError(msg)
    if high.as_dict() != {(1, 1): 4.0} or high.tail != 1e-4:  # noqa: PLR2004
        msg = f"Unexpected Z1 projection {high.as_dict()} tail={high.tail}"
        raise AssertionError(msg)
    inner = project(SpectralField.from_modes({(3, 3): 1.0, (4, 0): 1.0}), Subspace.Y2)
    if inner.as_dict() != {(3, 3): 1.0}:
        msg = f"Unexpected Y2 projection {inner.as_dict()}"
        raise AssertionError(msg)


def test_rescale_maps_modes() -> None:
    """u(3 tau, x) moves P00 to P10; 3 u(tau, 3x) moves P00 to 3 P01."""
    p00 = SpectralField.from_modes({(0, 0): 1.0})
    if rescale(p00, 3, 1).as_dict() != {(1, 0): 1.0}:
        msg = f"rescale(P00, 3, 1) = {rescale(p00, 3, 1).as_dict()}"
        raise AssertionError(msg)
    if rescale(p00, 1, 3).as_dict() != {(0, 1): 3.0}:
        msg = f"rescale(P00, 1, 3) = {rescale(p00, 1, 3).as_dict()}"
        raise AssertionError(msg)


def test_rescale_rejects_even_factor_and_tail() -> None:
    """Even factors leave the odd-odd basis; tails cannot be transported."""
    p00 = SpectralField.from_modes({(0, 0): 1.0})
    with pytest.raises(DomainError):
        rescale(p00, 2, 1)
    with pytest.raises(DomainError):
        rescale(p00.with_tail(1e-9), 3, 3)


def test_focusing_transform_swaps_axes() -> None:
    """P01 with omega = 2 becomes P10 / 2, and the tail scales the same way."""
    out = focusing_transform(SpectralField.from_modes({(0, 1): 1.0}, tail=1e-6), 2.0)
    if out.as_dict() != {(1, 0): 0.5} or not math.isclose(out.tail, 5e-7):
        msg = f"Unexpected focusing image {out.as_dict()} tail={out.tail}"
        raise AssertionError(msg)
    with pytest.raises(DomainError):
        focusing_transform(out, 0.0)


def test_truncate_folds_mass_into_tail() -> None:
    """Dropped modes reappear in the tail and the total norm is unchanged."""
    field = SpectralField.from_modes({(0, 0): 1.0, (5, 5): 1e-3, (0, 1): 1e-45})
    out = truncate(field, max_order=6, floor=1e-40)
    if out.as_dict() != {(0, 0): 1.0}:
        msg = f"Expected only P00 to survive, got {out.as_dict()}"
        raise AssertionError(msg)
    if not math.isclose(norm(out), norm(field), rel_tol=1e-15):
        msg = f"norm changed from {norm(field)} to {norm(out)}"
        raise AssertionError(msg)


def test_payload_schema() -> None:
    """Modes are serialized in lexicographic order with the rational rho label."""
    field = SpectralField.from_modes({(1, 0): 2.0, (0, 3): -1.0}, tail=1e-8)
    payload = field_to_payload(field)
    if payload.rho != "1001/1000" or [(m.m, m.n) for m in payload.modes] != [(0, 3), (1, 0)]:
        msg = f"Unexpected payload {payload}"
        raise AssertionError(msg)
    back = field_from_payload(payload)
    if back.as_dict() != field.as_dict() or back.tail != field.tail:
        msg = "payload did not restore the field"
        raise AssertionError(msg)
