"""Background job orchestration for Picard solves and bound-suite runs."""

import json
from typing import Any

from app.core.db import get_db
from app.core.models import RunConfig
from app.core.settings import get_settings, resolve
from app.core.utils import get_logger
from app.spectral.fixed_point import solve_for_k
from app.verifier import run_suite

logger = get_logger("cubic-wave.worker")

SOLVE = "solve"
VERIFY_BOUNDS = "verify-bounds"
KINDS = (SOLVE, VERIFY_BOUNDS)


def _solve(params: dict[str, Any]) -> str:
    defaults = get_settings().solver
    report = solve_for_k(params["k"], defaults, tol=params.get("tol"), max_iter=params.get("max_iter"))
    config = RunConfig(
        subcommand=SOLVE,
        k=params["k"],
        tol=resolve(params.get("tol"), defaults.solve_tol),
        max_iter=resolve(params.get("max_iter"), defaults.max_iter),
        n_f=defaults.n_f,
        defaults=defaults,
    )
    return report.to_payload(config).model_dump_json()


def _verify(params: dict[str, Any]) -> str:
    defaults = get_settings().solver
    config = RunConfig(
        subcommand=VERIFY_BOUNDS,
        k=resolve(params.get("k"), defaults.lemma_k),
        scan_depth=resolve(params.get("scan_depth"), defaults.scan_depth),
        lattice_cutoff=defaults.lattice_cutoff,
        seed=resolve(params.get("seed"), defaults.seed),
        strict=bool(params.get("strict")),
        defaults=defaults,
    )
    return run_suite(config).model_dump_json(by_alias=True)


def run_job(job_id: str, kind: str, params: dict[str, Any]) -> None:
    """Run one job with the same library calls the CLI uses and store its artifact."""
    logger.info(f"Starting job: {job_id}, kind: {kind}, params: {json.dumps(params)}")
    db = get_db()
    try:
        db.mark_running(job_id)
        try:
            if kind == SOLVE:
                artifact = _solve(params)
            elif kind == VERIFY_BOUNDS:
                artifact = _verify(params)
            else:
                msg = f"unknown job kind {kind!r}; expected one of {KINDS}"
                raise ValueError(msg)  # noqa: TRY301
            db.mark_completed(job_id, artifact)
            logger.info(f"Job {job_id} completed")
        except Exception as exc:
            logger.exception(f"Error processing job {job_id}")
            db.mark_error(job_id, str(exc))
    finally:
        db.close()
