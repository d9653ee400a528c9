"""Picard iteration of N_k on the ball of radius delta_k = k^{-1/2}/500, and a-posteriori diagnostics.

Every step works on tail-free representatives: the cube is truncated explicitly and the folded mass, pushed through
L_k^{-1}, becomes the tail of the new iterate. The report carries the largest such deposit divided by
1 - contraction_estimate as the truncation bound of the fixed point.
"""

import math
from dataclasses import dataclass, field
from fractions import Fraction

from app.core.errors import ConvergenceError, DivergenceError, DomainError
from app.core.models import RunConfig, SolutionPayload
from app.core.settings import SolverDefaults
from app.core.utils import get_logger
from app.spectral.approx import ApproxCoefficients, FrequencyContext, build_coeffs, build_uk
from app.spectral.core import (
    SpectralField,
    WeightConfig,
    field_to_payload,
    linear_combine,
    norm,
    triple_product,
    truncate,
)
from app.spectral.operators import OperatorAConstants, Preconditioner, apply_L, apply_L_inv, build_A
from app.spectral.qroot import solve_q

logger = get_logger("cubic-wave.solver")

THEOREM_K = 79_675
CONTRACTION_CAP = Fraction(929, 1000)
DISTANCE_CAP = Fraction(139, 42_500)
NONTRIVIAL_THRESHOLD = Fraction(5, 4) - DISTANCE_CAP
DIVERGENCE_FACTOR = 10
THEOREM_RANGE = "theorem range"
OUTSIDE_RANGE = "outside theorem range"


def delta_k(k: int) -> float:
    """Ball radius k^{-1/2}/500."""
    return 1 / (500 * math.sqrt(k))


@dataclass(frozen=True)
class SolutionReport:
    """Outcome of a Picard solve: u = u_k + A h and its diagnostics."""

    k: int
    q: float
    h: SpectralField
    u: SpectralField
    iterations: int
    increments: list[float] = field(default_factory=list)
    contraction_estimate: float = 0.0
    pde_residual_norm: float = 0.0
    distance_to_uk: float = 0.0
    truncation_bound: float = 0.0
    regime: str = OUTSIDE_RANGE

    @property
    def omega(self) -> Fraction:
        """Exact frequency (2k+1)/(2k)."""
        return Fraction(2 * self.k + 1, 2 * self.k)

    def to_payload(self, config: RunConfig) -> SolutionPayload:
        """Serialize with the run configuration embedded."""
        return SolutionPayload(
            k=self.k,
            omega=float(self.omega),
            omega_exact=str(self.omega),
            q=self.q,
            iterations=self.iterations,
            contraction=self.contraction_estimate,
            pde_residual=self.pde_residual_norm,
            distance_to_uk=self.distance_to_uk,
            truncation_bound=self.truncation_bound,
            regime=self.regime,
            nontrivial=nontriviality_check(FrequencyContext(self.k), self),
            increments=self.increments,
            config=config,
            u=field_to_payload(self.u),
            h=field_to_payload(self.h),
        )


def _contraction(increments: list[float]) -> float:
    ratios = [b / a for a, b in zip(increments, increments[1:], strict=False) if a > 0]
    return max(ratios, default=0.0)


def picard_step(
    ctx: FrequencyContext,
    uk: SpectralField,
    A: Preconditioner,  # noqa: N803
    h: SpectralField,
    truncation_order: int,
    fold_floor: float,
) -> SpectralField:
    """One application of N_k on representatives; the truncated cube mass becomes the tail."""
    s = linear_combine(1.0, uk.representative(), 1.0, A.apply(h.representative()))
    cube = truncate(triple_product(s, s, s), truncation_order, fold_floor)
    step = linear_combine(-1.0, apply_L_inv(ctx, cube), -1.0, uk.representative())
    return linear_combine(1.0, step, 1.0, A.apply_I_minus_A(h.representative()))


def iterate(
    ctx: FrequencyContext,
    coeffs: ApproxCoefficients,
    A: Preconditioner,  # noqa: N803
    tol: float = 1e-14,
    max_iter: int = 200,
    truncation_order: int = 60,
    fold_floor: float = 1e-40,
) -> SolutionReport:
    """Run h_{j+1} = N_k(h_j) from h_0 = 0 until ||h_{j+1} - h_j|| <= tol."""
    if not tol > 0 or max_iter < 1:
        msg = f"need tol > 0 and max_iter >= 1, got tol={tol}, max_iter={max_iter}"
        raise DomainError(msg)
    uk = build_uk(ctx, coeffs, A.weight)
    radius = delta_k(ctx.k)
    h = SpectralField.zero(A.weight)
    increments: list[float] = []
    deposited = 0.0
    for iteration in range(1, max_iter + 1):
        h_next = picard_step(ctx, uk, A, h, truncation_order, fold_floor)
        increment = norm(linear_combine(1.0, h_next.representative(), -1.0, h.representative()))
        increments.append(increment)
        deposited = max(deposited, h_next.tail)
        logger.debug(f"k={ctx.k} iteration {iteration}: increment={increment:.3e} |h|={norm(h_next):.3e}")
        if norm(h_next) > DIVERGENCE_FACTOR * radius:
            msg = f"iterate left the ball: |h|={norm(h_next):.3e} > {DIVERGENCE_FACTOR} delta_k={radius:.3e}"
            raise DivergenceError(msg, increments)
        h = h_next
        if increment <= tol:
            break
    else:
        msg = f"no convergence in {max_iter} iterations (last increment {increments[-1]:.3e})"
        raise ConvergenceError(msg, increments)

    contraction = _contraction(increments)
    ah = A.apply(h)
    u = linear_combine(1.0, uk, 1.0, ah)
    in_range = ctx.k >= THEOREM_K and contraction < CONTRACTION_CAP and norm(h) <= radius
    regime = THEOREM_RANGE if in_range else OUTSIDE_RANGE
    if not in_range:
        logger.warning(f"k={ctx.k} solved outside the theorem range; the result is empirical")
    truncation_bound = deposited / (1 - contraction) if contraction < 1 else math.inf
    report = SolutionReport(
        k=ctx.k,
        q=coeffs.q,
        h=h,
        u=u,
        iterations=len(increments),
        increments=increments,
        contraction_estimate=contraction,
        pde_residual_norm=verify_solution(ctx, u),
        distance_to_uk=norm(ah),
        truncation_bound=truncation_bound,
        regime=regime,
    )
    logger.info(
        f"k={ctx.k} converged in {report.iterations} iterations: contraction={contraction:.4f}, "
        f"|Ah|={report.distance_to_uk:.3e}, pde residual={report.pde_residual_norm:.3e}"
    )
    return report


def verify_solution(ctx: FrequencyContext, u: SpectralField) -> float:
    """||L_k u + u^3||: L_k acts on the representative, the cube carries the propagated tail."""
    cube = triple_product(u, u, u)
    return norm(linear_combine(1.0, apply_L(ctx, u.representative()), 1.0, cube))


def nontriviality_check(ctx: FrequencyContext, subject: SolutionReport | SpectralField) -> bool:
    """True iff ||u|| sqrt(k) > 5/4 - 139/42500."""
    u = subject.u if isinstance(subject, SolutionReport) else subject
    return norm(u) * math.sqrt(ctx.k) > float(NONTRIVIAL_THRESHOLD)


def solve_for_k(
    k: int, defaults: SolverDefaults, tol: float | None = None, max_iter: int | None = None
) -> SolutionReport:
    """Solve for q, build u_k and A, and run the Picard iteration with the given defaults."""
    root = solve_q(defaults.q_tol, defaults.q_series_cutoff)
    coeffs = build_coeffs(root.q, defaults.n_f)
    ctx = FrequencyContext(k)
    preconditioner = build_A(OperatorAConstants.from_coeffs(coeffs), WeightConfig(defaults.rho_fraction))
    return iterate(
        ctx,
        coeffs,
        preconditioner,
        tol=defaults.solve_tol if tol is None else tol,
        max_iter=defaults.max_iter if max_iter is None else max_iter,
        truncation_order=defaults.truncation_order,
        fold_floor=defaults.fold_floor,
    )
