"""Run every registered check on a worker pool and aggregate the reports deterministically."""

import concurrent.futures

from app.core.errors import DomainError
from app.core.models import BoundReport, QRoot, RunConfig, SuiteArtifact
from app.core.settings import resolve
from app.core.utils import get_logger
from app.spectral.approx import FrequencyContext, build_coeffs
from app.spectral.core import WeightConfig
from app.spectral.operators import OperatorAConstants, build_A
from app.spectral.qroot import solve_q
from app.verifier import checks  # noqa: F401
from app.verifier.base import SuiteContext
from app.verifier.registry import CheckRegistry

logger = get_logger("cubic-wave.verifier")

EMPIRICAL_NORM_K = 1000


def build_context(config: RunConfig, root: QRoot | None = None) -> SuiteContext:
    """Solve q (unless given), tabulate the coefficients and fix the k values of the run."""
    defaults = config.defaults
    root = root or solve_q(defaults.q_tol, defaults.q_series_cutoff)
    coeffs = build_coeffs(root.q, resolve(config.n_f, defaults.n_f))
    weight = WeightConfig(defaults.rho_fraction)
    lemma_k = resolve(config.k, defaults.lemma_k)
    theorem_k = max(lemma_k, defaults.theorem_k)
    scan_depth = resolve(config.scan_depth, defaults.scan_depth)
    lattice = resolve(config.lattice_cutoff, defaults.lattice_cutoff)
    if scan_depth < 1 or lattice < 1:
        msg = f"scan depth and lattice cutoff must be positive, got {scan_depth}, {lattice}"
        raise DomainError(msg)
    return SuiteContext(
        config=config,
        root=root,
        coeffs=coeffs,
        weight=weight,
        preconditioner=build_A(OperatorAConstants.from_coeffs(coeffs), weight),
        lemma=FrequencyContext(lemma_k),
        theorem=FrequencyContext(theorem_k),
        norm_contexts=tuple(FrequencyContext(k) for k in sorted({lemma_k, EMPIRICAL_NORM_K, theorem_k})),
        scan_depth=scan_depth,
        lattice=lattice,
        seed=resolve(config.seed, defaults.seed),
    )


def _sort_key(report: BoundReport) -> tuple[str, int]:
    return report.name, report.k or 0


def run_suite(config: RunConfig, root: QRoot | None = None) -> SuiteArtifact:
    """Run the selected checks concurrently; reports come back sorted by (name, k)."""
    context = build_context(config, root)
    selected = CheckRegistry.selected(strict=config.strict)
    logger.info(f"Running {len(selected)} checks (strict={config.strict}, k={context.lemma.k})")
    reports: list[BoundReport] = []
    with concurrent.futures.ThreadPoolExecutor(max_workers=config.defaults.verifier_workers) as executor:
        futures = {executor.submit(check().run, context): check.name for check in selected}
        for future in concurrent.futures.as_completed(futures):
            try:
                reports.extend(future.result())
            except Exception:
                logger.exception(f"Check {futures[future]} raised")
                raise
    reports.sort(key=_sort_key)
    failed = [report.name for report in reports if not report.passed]
    if failed:
        logger.warning(f"{len(failed)} of {len(reports)} reports failed: {', '.join(failed)}")
    else:
        logger.info(f"All {len(reports)} reports passed")
    return SuiteArtifact(config=config, q=context.root.q, reports=reports)
