"""Concrete checks, registered under the names that appear in the reports."""

from app.core.models import BoundReport
from app.spectral.core import ModeIndex
from app.verifier import bounds
from app.verifier.base import BoundCheck, SuiteContext
from app.verifier.registry import CheckRegistry

J_SAMPLE_MODES = (
    ModeIndex(0, 0),
    ModeIndex(0, 1),
    ModeIndex(1, 0),
    ModeIndex(1, 1),
    ModeIndex(2, 3),
    ModeIndex(3, 2),
    ModeIndex(5, 7),
    ModeIndex(7, 5),
    ModeIndex(10, 0),
    ModeIndex(20, 20),
)


class GapInequalityCheck(BoundCheck):
    """Random audit of |t^2 - s^2| >= 2 max{t, s} - 1."""

    name = "gap_inequality"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Sample with the configured seed."""
        defaults = context.config.defaults
        return [bounds.check_gap_inequality(defaults.gap_samples, context.seed)]


class FractionLemmaCheck(BoundCheck):
    """Exhaustive integer scan of the fraction lemma."""

    name = "fraction_lemma"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Scan k <= fraction_k_max, n <= fraction_n_max."""
        defaults = context.config.defaults
        return [bounds.check_fraction_lemma(defaults.fraction_k_max, defaults.fraction_n_max)]


class QBracketCheck(BoundCheck):
    """Sign change of the closed-form bounds of g on the q bracket."""

    name = "q_bracket"

    def run(self, context: SuiteContext) -> list[BoundReport]:  # noqa: ARG002
        """Float evaluation."""
        return [bounds.check_q_bracket()]


class BetaIntervalsCheck(BoundCheck):
    """beta0 and beta1 inside their intervals."""

    name = "beta_intervals"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Use the tabulated betas."""
        return bounds.check_beta_intervals(context.coeffs)


class ANormCheck(BoundCheck):
    """Column bound of the preconditioner."""

    name = "A_norm"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Largest column ratio."""
        return [bounds.check_A_norm(context.preconditioner)]


class AlphaCapsCheck(BoundCheck):
    """alpha coefficients of the lattice tail below their caps."""

    name = "alpha_caps"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Evaluate at the solved q."""
        return [bounds.check_alpha_caps(context.coeffs.q, context.weight)]


class BSeriesCheck(BoundCheck):
    """Weighted sum of the u_k^3 coefficients."""

    name = "b_series"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Sum over the fixed b-series box, independent of the c-lattice cutoff."""
        box = context.config.defaults.b_series_box
        return [bounds.check_b_series(context.coeffs, box, context.weight)]


class ApproxNormsCheck(BoundCheck):
    """||u_k||, ||u_k^3|| and ||N_k(0)|| at every configured k."""

    name = "approx_norms"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Three reports per k."""
        reports = []
        for ctx in context.norm_contexts:
            reports.append(bounds.check_uk_norm(ctx, context.coeffs, context.weight))
            reports.append(bounds.check_uk3_norm(ctx, context.coeffs, context.weight))
            reports.append(bounds.check_residue_norm(ctx, context.coeffs, context.preconditioner))
        return reports


class TailLemmaCheck(BoundCheck):
    """Brute-force lattice sums against the closed-form tail."""

    name = "tail_lemma"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Levels 1..tail_l_max at the lemma k."""
        defaults = context.config.defaults
        return [
            bounds.check_tail_lemma(
                context.lemma, context.coeffs, defaults.tail_l_max, defaults.tail_cutoff, context.weight
            )
        ]


class JBoundCheck(BoundCheck):
    """J estimate on a fixed sample of columns."""

    name = "J_bound"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Ten columns, near the origin and far from it."""
        return [
            bounds.check_J_bound(context.lemma, context.coeffs, list(J_SAMPLE_MODES), context.lattice, context.weight)
        ]


class HNormCheck(BoundCheck):
    """Global bound on H_k by column scan plus the uniform estimate."""

    name = "H_norm"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Scan at the lemma k."""
        return [
            bounds.check_H_norm(
                context.lemma, context.coeffs, context.preconditioner, context.scan_depth, context.lattice
            )
        ]


class HColumnsTableCheck(BoundCheck):
    """The sixteen individual column constants."""

    name = "H_columns_table"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """One report per column."""
        return bounds.check_H_columns_table(context.lemma, context.coeffs, context.preconditioner, context.lattice)


class TheoremCheck(BoundCheck):
    """Contraction and ball-mapping inequalities at the theorem k."""

    name = "theorem"

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Both inequalities as separate reports."""
        certificate = bounds.theorem1_certificate(
            context.theorem, context.coeffs, context.preconditioner, context.scan_depth, context.lattice
        )
        return [certificate.contraction, certificate.ball_mapping]


class StrictQBracketCheck(BoundCheck):
    """Rational q bracket."""

    name = "strict.q_bracket"
    strict_only = True

    def run(self, context: SuiteContext) -> list[BoundReport]:  # noqa: ARG002
        """Exact evaluation."""
        return [bounds.strict_q_bracket()]


class StrictBetaIntervalsCheck(BoundCheck):
    """Rational beta enclosures."""

    name = "strict.beta_intervals"
    strict_only = True

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Enclosures at the stored q."""
        return [bounds.strict_beta_intervals(context.coeffs.q)]


class StrictAEntriesCheck(BoundCheck):
    """Rational preconditioner entries."""

    name = "strict.A_entries"
    strict_only = True

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Betas as exact rationals."""
        return [bounds.strict_A_entries(context.coeffs, context.weight)]


class StrictAlphaCapsCheck(BoundCheck):
    """Rational alpha caps."""

    name = "strict.alpha_caps"
    strict_only = True

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """q and rho as exact rationals."""
        return [bounds.strict_alpha_caps(context.coeffs.q, context.weight)]


class StrictFractionLemmaCheck(BoundCheck):
    """Fraction lemma in Python integers."""

    name = "strict.fraction_lemma"
    strict_only = True

    def run(self, context: SuiteContext) -> list[BoundReport]:
        """Same ranges as the vectorized scan."""
        defaults = context.config.defaults
        return [bounds.strict_fraction_lemma(defaults.fraction_k_max, defaults.fraction_n_max)]


for _check in (
    GapInequalityCheck,
    FractionLemmaCheck,
    QBracketCheck,
    BetaIntervalsCheck,
    ANormCheck,
    AlphaCapsCheck,
    BSeriesCheck,
    ApproxNormsCheck,
    TailLemmaCheck,
    JBoundCheck,
    HNormCheck,
    HColumnsTableCheck,
    TheoremCheck,
    StrictQBracketCheck,
    StrictBetaIntervalsCheck,
    StrictAEntriesCheck,
    StrictAlphaCapsCheck,
    StrictFractionLemmaCheck,
):
    CheckRegistry.register(_check.name, _check)
