"""Numeric checks of every quantitative estimate behind the existence argument.

Each function measures one quantity, adds the tail budgets it depends on, and compares the result against the
exact rational constant through BoundReport.compare. sqrt(2) enters as the rational bracket
(1.41421356, 1.41421357), always on the side that makes the check harder to pass.
"""

import math
from fractions import Fraction

import numpy as np

from app.core.errors import DomainError, OutOfRangeError
from app.core.models import SQRT2_LOWER, SQRT2_UPPER, BoundReport, TailBound, TheoremCertificate
from app.core.utils import get_logger
from app.spectral.approx import (
    BETA0_INTERVAL,
    BETA1_INTERVAL,
    ApproxCoefficients,
    FrequencyContext,
    b_series_weighted_sum,
    build_uk,
    c_table,
    coefficient_bounds,
)
from app.spectral.core import (
    DEFAULT_WEIGHT,
    ModeIndex,
    SpectralField,
    WeightConfig,
    canonicalize_array,
    norm,
    triple_product,
)
from app.spectral.fixed_point import CONTRACTION_CAP, OUTSIDE_RANGE, THEOREM_K, THEOREM_RANGE, delta_k
from app.spectral.operators import (
    OperatorAConstants,
    Preconditioner,
    alpha_coefficients,
    h_column,
    l_inv_values,
    lattice_tail,
    residual_N,
    signed_c_kernel,
    z2_uniform_bound,
)
from app.spectral.qroot import BRACKET_HI, BRACKET_LO, g_lower, g_upper

logger = get_logger("cubic-wave.verifier")

LEMMA_K = 100
GAP_RANGE = (1.0, 1000.0)
UK_UPPER = Fraction(3, 2)
UK_LOWER = Fraction(5, 4)
UK3_BOUND = 2 * SQRT2_LOWER
RESIDUE_BOUND = 8 * SQRT2_LOWER
B_SERIES_BOUND = Fraction(19, 10_000)
A_NORM_BOUND = Fraction(139, 85)
A00_BOUND = Fraction(10, 17)
A01_BOUND = Fraction(54, 85)
ALPHA_CAPS = (Fraction(1045, 1000), Fraction(2003, 1000), Fraction(974, 1000))
J_BOUND = Fraction(1, 16)
H_BOUND = Fraction(88, 100)
BALL_CAP = Fraction(1)
H_COLUMN_TABLE: dict[tuple[int, int], Fraction] = {
    (0, 0): Fraction(15, 100),
    (0, 1): Fraction(30, 100),
    (0, 2): Fraction(24, 100),
    (0, 3): Fraction(19, 100),
    (1, 0): Fraction(30, 100),
    (1, 1): Fraction(74, 100),
    (1, 2): Fraction(30, 100),
    (1, 3): Fraction(21, 100),
    (2, 0): Fraction(24, 100),
    (2, 1): Fraction(30, 100),
    (2, 2): Fraction(30, 100),
    (2, 3): Fraction(24, 100),
    (3, 0): Fraction(19, 100),
    (3, 1): Fraction(21, 100),
    (3, 2): Fraction(24, 100),
    (3, 3): Fraction(24, 100),
}
UNIFORM_COLUMN_START = 4


def _log_verdict(report: BoundReport) -> BoundReport:
    suffix = "" if report.k is None else f" (k={report.k})"
    if report.passed:
        logger.info(f"{report.name}{suffix}: {report.measured:.6g} <= {report.bound:.6g} (margin {report.margin:.3g})")
    else:
        logger.warning(f"{report.name}{suffix} FAILED: measured {report.measured:.6g}, bound {report.bound:.6g}")
    return report


def _require_lemma_range(ctx: FrequencyContext, what: str) -> None:
    if ctx.k < LEMMA_K:
        msg = f"{what} is only established for k >= {LEMMA_K}, got k={ctx.k}"
        raise OutOfRangeError(msg)


# Elementary inequalities


def check_gap_inequality(samples: int = 10_000, seed: int = 1729) -> BoundReport:
    """|t^2 - s^2| >= 2 max{t, s} - 1 on random pairs with |t - s| >= 1, evaluated exactly."""
    if samples < 1:
        msg = f"need at least one sample, got {samples}"
        raise DomainError(msg)
    rng = np.random.default_rng(seed)
    pairs: list[tuple[float, float]] = []
    while len(pairs) < samples:
        draw = rng.uniform(*GAP_RANGE, size=(2 * samples, 2))
        kept = draw[np.abs(draw[:, 0] - draw[:, 1]) >= 1.0]
        pairs.extend((float(t), float(s)) for t, s in kept[: samples - len(pairs)])
    slack = min(abs(Fraction(t) ** 2 - Fraction(s) ** 2) - (2 * Fraction(max(t, s)) - 1) for t, s in pairs)
    return _log_verdict(
        BoundReport.compare(
            "gap_inequality",
            -slack,
            Fraction(0),
            truncation={"samples": samples, "seed": seed, "range": list(GAP_RANGE)},
            details={"min_slack": float(slack)},
        )
    )


def check_fraction_lemma(k_max: int = 200, n_max: int = 50) -> BoundReport:
    """k^2 / |16(m-n)(m+n+1)k^2 + (2m+1)^2(4k+1)| <= 1 for 1 <= k <= k_max, 0 <= m < n <= n_max."""
    if k_max < 2 or n_max < 2:  # noqa: PLR2004
        msg = f"k_max and n_max must be at least 2, got {k_max}, {n_max}"
        raise DomainError(msg)
    k = np.arange(1, k_max + 1, dtype=np.int64)[:, None]
    m, n = np.triu_indices(n_max + 1, k=1)
    m, n = m.astype(np.int64)[None, :], n.astype(np.int64)[None, :]
    denominator = np.abs(16 * (m - n) * (m + n + 1) * k**2 + (2 * m + 1) ** 2 * (4 * k + 1))
    numerator = np.broadcast_to(k**2, denominator.shape)
    violations = int(np.count_nonzero((denominator == 0) | (numerator > denominator)))
    safe = np.where(denominator == 0, 1, denominator)
    worst = np.unravel_index(np.argmax(numerator / safe), denominator.shape)
    ratio = Fraction(int(numerator[worst]), int(safe[worst]))
    return _log_verdict(
        BoundReport.compare(
            "fraction_lemma",
            ratio,
            Fraction(1),
            truncation={"k_max": k_max, "n_max": n_max},
            details={
                "violations": violations,
                "worst": {"k": int(k[worst[0], 0]), "m": int(m[0, worst[1]]), "n": int(n[0, worst[1]])},
            },
        )
    )


# Norms of the approximate solution


def check_uk_norm(
    ctx: FrequencyContext, coeffs: ApproxCoefficients, weight: WeightConfig = DEFAULT_WEIGHT
) -> BoundReport:
    """5/4 < sqrt(k) ||u_k|| <= 3/2, with the omitted diagonal included as tail."""
    uk = build_uk(ctx, coeffs, weight)
    return _log_verdict(
        BoundReport.compare(
            "uk_norm",
            norm(uk) * math.sqrt(ctx.k),
            UK_UPPER,
            k=ctx.k,
            lower=UK_LOWER,
            truncation={"n_f": coeffs.n_f, "tail": uk.tail},
        )
    )


def check_uk3_norm(
    ctx: FrequencyContext, coeffs: ApproxCoefficients, weight: WeightConfig = DEFAULT_WEIGHT
) -> BoundReport:
    """k^{3/2} ||u_k^3|| <= 2 sqrt(2)."""
    uk = build_uk(ctx, coeffs, weight)
    cube = triple_product(uk, uk, uk)
    return _log_verdict(
        BoundReport.compare(
            "uk3_norm",
            norm(cube) * ctx.k**1.5,
            UK3_BOUND,
            k=ctx.k,
            truncation={"n_f": coeffs.n_f, "tail": cube.tail},
        )
    )


def check_residue_norm(
    ctx: FrequencyContext, coeffs: ApproxCoefficients, A: Preconditioner  # noqa: N803
) -> BoundReport:
    """k^{3/2} ||N_k(0)|| <= 8 sqrt(2)."""
    residue = residual_N(ctx, coeffs, A, SpectralField.zero(A.weight))
    return _log_verdict(
        BoundReport.compare(
            "residue_norm",
            norm(residue) * ctx.k**1.5,
            RESIDUE_BOUND,
            k=ctx.k,
            truncation={"n_f": coeffs.n_f, "tail": residue.tail},
        )
    )


def check_b_series(coeffs: ApproxCoefficients, box: int = 40, weight: WeightConfig = DEFAULT_WEIGHT) -> BoundReport:
    """Sum of rho^{2(m+n+1)} |b_{m,n}| over m, n <= box stays below 19/10000."""
    return _log_verdict(
        BoundReport.compare(
            "b_series",
            b_series_weighted_sum(coeffs, box, weight),
            B_SERIES_BOUND,
            truncation={"box": box},
        )
    )


# Preconditioner and q certificates


def check_A_norm(A: Preconditioner) -> BoundReport:  # noqa: N802, N803
    """Largest column ratio ||A P|| / ||P||; off span{P00, P01, P10} the ratio is 1."""
    ratios = {f"{m},{n}": A.column_ratio(ModeIndex(m, n)) for m, n in ((0, 0), (0, 1), (1, 0))}
    return _log_verdict(
        BoundReport.compare(
            "A_norm",
            max(1.0, *ratios.values()),
            A_NORM_BOUND,
            details={"columns": ratios, "a00": float(A.constants.a00), "a01": float(A.constants.a01)},
        )
    )


def check_beta_intervals(coeffs: ApproxCoefficients) -> list[BoundReport]:
    """beta0 in (113/1000, 135/1000) and beta1 in (38/1000, 45/1000)."""
    return [
        _log_verdict(BoundReport.compare(name, value, interval[1], lower=interval[0], truncation={"n_f": coeffs.n_f}))
        for name, value, interval in (
            ("beta0_interval", coeffs.beta0, BETA0_INTERVAL),
            ("beta1_interval", coeffs.beta1, BETA1_INTERVAL),
        )
    ]


def check_q_bracket() -> BoundReport:
    """Float evaluation of max{g_upper(13/1000), -g_lower(15/1000)}, which must be negative."""
    lo, hi = float(BRACKET_LO), float(BRACKET_HI)
    upper_at_lo, lower_at_hi = g_upper(lo), g_lower(hi)
    return _log_verdict(
        BoundReport.compare(
            "q_bracket",
            max(upper_at_lo, -lower_at_hi),
            Fraction(0),
            details={"g_upper(lo)": upper_at_lo, "g_lower(hi)": lower_at_hi},
        )
    )


def tail_bound(
    l: int, ctx: FrequencyContext, coeffs: ApproxCoefficients, weight: WeightConfig = DEFAULT_WEIGHT  # noqa: E741
) -> TailBound:
    """Closed-form bound on the c lattice outside |mu|, |nu| <= l."""
    alpha0, alpha1, alpha2 = alpha_coefficients(coeffs.q, float(weight.rho))
    return TailBound(
        l=l,
        alpha0=alpha0,
        alpha1=alpha1,
        alpha2=alpha2,
        value=lattice_tail(ctx, coeffs.q, l, weight),
    )


def check_alpha_caps(q: float, weight: WeightConfig = DEFAULT_WEIGHT) -> BoundReport:
    """alpha0 < 1045/1000, alpha1 < 2003/1000, alpha2 < 974/1000; reported as the largest alpha_i / cap_i."""
    alphas = alpha_coefficients(q, float(weight.rho))
    ratios = [alpha / float(cap) for alpha, cap in zip(alphas, ALPHA_CAPS, strict=True)]
    return _log_verdict(
        BoundReport.compare(
            "alpha_caps",
            max(ratios),
            Fraction(1),
            details={"alpha0": alphas[0], "alpha1": alphas[1], "alpha2": alphas[2]},
        )
    )


def check_tail_lemma(
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    l_max: int = 10,
    cutoff: int = 400,
    weight: WeightConfig = DEFAULT_WEIGHT,
) -> BoundReport:
    """Brute-force lattice sum over |mu| > l or |nu| > l, |mu|, |nu| <= cutoff, against the closed form for each l."""
    if l_max < 1 or cutoff <= l_max:
        msg = f"need 1 <= l_max < cutoff, got l_max={l_max}, cutoff={cutoff}"
        raise DomainError(msg)
    table = np.abs(c_table(ctx, coeffs, cutoff))
    a, b = np.indices(table.shape)
    multiplicity = np.where(a > 0, 2, 1) * np.where(b > 0, 2, 1)
    weighted = multiplicity * table * float(weight.rho) ** (4 * np.maximum(a, b))
    per_level: dict[str, dict[str, float]] = {}
    worst = 0.0
    for level in range(1, l_max + 1):
        brute = float(np.sum(weighted[(a > level) | (b > level)]))
        closed = tail_bound(level, ctx, coeffs, weight).value
        per_level[str(level)] = {"brute_force": brute, "closed_form": closed}
        worst = max(worst, brute / closed)
    return _log_verdict(
        BoundReport.compare(
            "tail_lemma",
            worst,
            Fraction(1),
            k=ctx.k,
            truncation={"l_max": l_max, "cutoff": cutoff},
            details={"levels": per_level},
        )
    )


# Operator estimates


def j_column(
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    mode: ModeIndex,
    lattice: int = 40,
    weight: WeightConfig = DEFAULT_WEIGHT,
) -> tuple[float, float]:
    """(truncated, tail) of ||J_k^{(m,n)}|| / ||P_{m,n}||: shifts with |mu| > 1 or |nu| > 1 pushed through L_k^{-1}."""
    kernel = signed_c_kernel(ctx, coeffs, lattice)
    offsets = np.arange(-lattice, lattice + 1)
    mu, nu = np.meshgrid(offsets, offsets, indexing="ij")
    rows, cols, _ = canonicalize_array(mode.m + mu, mode.n + nu)
    shifted = (np.abs(mu) > 1) | (np.abs(nu) > 1)
    targets = np.abs(l_inv_values(ctx, rows, cols)) * float(weight.rho) ** (2 * (rows + cols + 1))
    scale = weight.weight(mode.m, mode.n)
    truncated = float(np.sum(np.abs(kernel)[shifted] * targets[shifted])) / scale
    tail = lattice_tail(ctx, coeffs.q, lattice, weight) * float(ctx.l_inv_norm)
    return truncated, tail


def check_J_bound(  # noqa: N802
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    modes: list[ModeIndex],
    lattice: int = 40,
    weight: WeightConfig = DEFAULT_WEIGHT,
) -> BoundReport:
    """max over the given modes of ||J_k^{(m,n)}|| / ||P_{m,n}|| against 1/16."""
    _require_lemma_range(ctx, "the J estimate")
    columns = {f"{mode.m},{mode.n}": sum(j_column(ctx, coeffs, mode, lattice, weight)) for mode in modes}
    return _log_verdict(
        BoundReport.compare(
            "J_bound",
            max(columns.values()),
            J_BOUND,
            k=ctx.k,
            truncation={"lattice": lattice, "tail": lattice_tail(ctx, coeffs.q, lattice, weight)},
            details={"columns": columns},
        )
    )


def check_H_norm(  # noqa: N802
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    A: Preconditioner,  # noqa: N803
    scan_depth: int = 48,
    lattice: int = 40,
) -> BoundReport:
    """Scan columns m, n <= scan_depth, then cover every other column with the uniform estimate 3 (I + J)."""
    _require_lemma_range(ctx, "the H estimate")
    if scan_depth < UNIFORM_COLUMN_START * 2:
        msg = f"scan depth must be at least {UNIFORM_COLUMN_START * 2}, got {scan_depth}"
        raise DomainError(msg)
    worst = max(
        (h_column(ctx, coeffs, A, m, n, lattice) for m in range(scan_depth + 1) for n in range(scan_depth + 1)),
        key=lambda column: column.ratio,
    )
    i_part, j_part = z2_uniform_bound(ctx, coeffs.q, A.weight)
    uniform = 3 * (i_part + j_part)
    return _log_verdict(
        BoundReport.compare(
            "H_norm",
            max(worst.ratio, uniform),
            H_BOUND,
            k=ctx.k,
            truncation={"scan_depth": scan_depth, "lattice": lattice},
            details={
                "scanned": f"m, n <= {scan_depth}",
                "uniform": f"m > {scan_depth} or n > {scan_depth} (estimate valid for m >= 4 or n >= 4)",
                "worst_column": {"m": worst.mode.m, "n": worst.mode.n, "ratio": worst.ratio, "tail": worst.tail},
                "uniform_bound": uniform,
                "uniform_i": i_part,
                "uniform_j": j_part,
            },
        )
    )


def check_H_columns_table(  # noqa: N802
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    A: Preconditioner,  # noqa: N803
    lattice: int = 40,
) -> list[BoundReport]:
    """The sixteen columns m, n <= 3 against their individual constants."""
    _require_lemma_range(ctx, "the H column table")
    reports = []
    for (m, n), bound in H_COLUMN_TABLE.items():
        column = h_column(ctx, coeffs, A, m, n, lattice)
        reports.append(
            _log_verdict(
                BoundReport.compare(
                    f"H_column[{m},{n}]",
                    column.ratio,
                    bound,
                    k=ctx.k,
                    truncation={"lattice": lattice, "tail": column.tail},
                )
            )
        )
    return reports


def theorem1_certificate(
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    A: Preconditioner,  # noqa: N803
    scan_depth: int = 48,
    lattice: int = 40,
    *,
    enforce_range: bool = True,
) -> TheoremCertificate:
    """Contraction constant below 929/1000 and (929/1000 + 4000 sqrt(2)/k) delta_k < delta_k."""
    if enforce_range and ctx.k < THEOREM_K:
        msg = f"the existence certificate needs k >= {THEOREM_K}, got k={ctx.k}"
        raise OutOfRangeError(msg)
    radius = delta_k(ctx.k)
    h_norm = check_H_norm(ctx, coeffs, A, scan_depth, lattice).measured
    uk_norm = norm(build_uk(ctx, coeffs, A.weight))
    l_inv = float(ctx.l_inv_norm)
    a_norm = A.norm_bound
    linear = 6 * l_inv * uk_norm * a_norm**2 * radius
    quadratic = 3 * l_inv * a_norm**3 * radius**2
    contraction = BoundReport.compare(
        "theorem.contraction",
        h_norm + linear + quadratic,
        CONTRACTION_CAP,
        k=ctx.k,
        truncation={"scan_depth": scan_depth, "lattice": lattice},
        details={"H_norm": h_norm, "uk_norm": uk_norm, "A_norm": a_norm, "l_inv_norm": l_inv},
    )
    ball = BoundReport.compare(
        "theorem.ball_mapping",
        CONTRACTION_CAP + 4000 * SQRT2_UPPER / ctx.k,
        BALL_CAP,
        k=ctx.k,
        details={"delta_k": radius, "residue_bound": float(8 * SQRT2_UPPER) * ctx.k**-1.5},
    )
    regime = THEOREM_RANGE if ctx.k >= THEOREM_K else OUTSIDE_RANGE
    _log_verdict(contraction)
    _log_verdict(ball)
    return TheoremCertificate(k=ctx.k, delta_k=radius, regime=regime, contraction=contraction, ball_mapping=ball)


# Exact rational variants


def strict_q_bracket() -> BoundReport:
    """g_upper(13/1000) < 0 < g_lower(15/1000) in rational arithmetic."""
    upper_at_lo, lower_at_hi = g_upper(BRACKET_LO), g_lower(BRACKET_HI)
    return _log_verdict(
        BoundReport.compare(
            "strict.q_bracket",
            max(upper_at_lo, -lower_at_hi),
            Fraction(0),
            details={"g_upper(lo)": float(upper_at_lo), "g_lower(hi)": float(lower_at_hi)},
        )
    )


def strict_beta_intervals(q: float) -> BoundReport:
    """Rational enclosures of beta0 and beta1 at the stored q lie inside their intervals.

    Reported as the largest excess of an enclosure endpoint over its interval, which must not be positive.
    """
    bounds = coefficient_bounds(Fraction(q))
    excess = max(
        bounds.beta0_upper - BETA0_INTERVAL[1],
        BETA0_INTERVAL[0] - bounds.beta0_lower,
        bounds.beta1_upper - BETA1_INTERVAL[1],
        BETA1_INTERVAL[0] - bounds.beta1_lower,
    )
    return _log_verdict(
        BoundReport.compare(
            "strict.beta_intervals",
            excess,
            Fraction(0),
            details={
                "beta0": [float(bounds.beta0_lower), float(bounds.beta0_upper)],
                "beta1": [float(bounds.beta1_lower), float(bounds.beta1_upper)],
            },
        )
    )


def strict_A_entries(coeffs: ApproxCoefficients, weight: WeightConfig = DEFAULT_WEIGHT) -> BoundReport:  # noqa: N802
    """|a00| < 10/17 and |a01| / rho^2 < 54/85 with the betas taken as exact rationals."""
    constants = OperatorAConstants.from_betas(Fraction(coeffs.beta0), Fraction(coeffs.beta1))
    rho_sq = weight.rho**2
    ratio = max(abs(constants.a00) / A00_BOUND, abs(constants.a01) / rho_sq / A01_BOUND)
    return _log_verdict(
        BoundReport.compare(
            "strict.A_entries",
            ratio,
            Fraction(1),
            details={"a00": float(constants.a00), "a01": float(constants.a01)},
        )
    )


def strict_alpha_caps(q: float, weight: WeightConfig = DEFAULT_WEIGHT) -> BoundReport:
    """alpha caps with q and rho as exact rationals."""
    alphas = alpha_coefficients(Fraction(q), weight.rho)
    ratio = max(alpha / cap for alpha, cap in zip(alphas, ALPHA_CAPS, strict=True))
    return _log_verdict(
        BoundReport.compare(
            "strict.alpha_caps",
            ratio,
            Fraction(1),
            details={f"alpha{i}": float(alpha) for i, alpha in enumerate(alphas)},
        )
    )


def strict_fraction_lemma(k_max: int = 200, n_max: int = 50) -> BoundReport:
    """The fraction lemma scan in Python integers, tracking the worst ratio by cross-multiplication."""
    best_num, best_den = 0, 1
    for k in range(1, k_max + 1):
        for n in range(1, n_max + 1):
            for m in range(n):
                denominator = abs(16 * (m - n) * (m + n + 1) * k**2 + (2 * m + 1) ** 2 * (4 * k + 1))
                if k**2 * best_den > best_num * denominator:
                    best_num, best_den = k**2, denominator
    return _log_verdict(
        BoundReport.compare(
            "strict.fraction_lemma",
            Fraction(best_num, best_den),
            Fraction(1),
            truncation={"k_max": k_max, "n_max": n_max},
        )
    )
