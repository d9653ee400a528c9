"""FastAPI endpoints for the cubic-wave-periodic API.

This module defines the routes for solving q, starting background Picard solves and bound-suite runs, checking job
status, downloading artifacts, and health checks. It wires together the spectral library, the job database and the
job runner.
"""

import json
import uuid

from fastapi import APIRouter, BackgroundTasks, Depends, HTTPException, Response
from fastapi.responses import JSONResponse

from app.api.dependencies import get_db_conn, get_solver_defaults
from app.core.db import DBHelper
from app.core.errors import ConsistencyError, DomainError
from app.core.models import JobStatus, QRoot, SolveJobRequest, VerifyJobRequest
from app.core.settings import SolverDefaults
from app.core.utils import get_logger
from app.spectral.qroot import solve_q
from app.workers.job_runner import SOLVE, VERIFY_BOUNDS, run_job

router = APIRouter()
logger = get_logger("cubic-wave.api")

JOB_ACCEPTED_EXAMPLE = {"job_id": "123e4567-e89b-12d3-a456-426614174000"}


def _start_job(db: DBHelper, background_tasks: BackgroundTasks, kind: str, params: dict) -> JSONResponse:
    job_id = str(uuid.uuid4())
    try:
        db.create_job(job_id, kind, json.dumps(params))
    finally:
        db.close()
    background_tasks.add_task(run_job, job_id, kind, params)
    logger.info(f"Background job started: job_id={job_id}, kind={kind}")
    return JSONResponse({"job_id": job_id}, status_code=202)


@router.post(
    "/solve-q",
    response_model=QRoot,
    summary="Solve the theta-series equation for q",
    description=(
        "Bisect g on the certified bracket [13/1000, 15/1000] and return q with its residual.\n\n"
        "**Query parameters:**\n"
        "- `tol` (optional): bisection tolerance, defaults to the configured q tolerance.\n\n"
        "**Response:**\n"
        "- 200 OK: the root, its residual and the final bracket.\n"
        "- 400 Bad Request: non-positive tolerance.\n"
        "- 500 Internal Server Error: the bracket certificate failed."
    ),
    response_description="Root of g.",
    responses={
        200: {
            "description": "Root found.",
            "content": {
                "application/json": {
                    "example": {
                        "q": 0.014214,
                        "residual": 1e-15,
                        "bracket": [0.014214, 0.014214],
                        "certified_bracket": ["13/1000", "15/1000"],
                        "series_cutoff": 16,
                        "iterations": 47,
                    }
                }
            },
        },
        400: {"description": "Invalid tolerance.", "content": {"application/json": {"example": {"detail": "..."}}}},
        500: {"description": "Bracket certificate failed."},
    },
)
async def post_solve_q(tol: float | None = None, defaults: SolverDefaults = Depends(get_solver_defaults)) -> QRoot:
    """Solve for q synchronously."""
    try:
        return solve_q(tol or defaults.q_tol, defaults.q_series_cutoff)
    except DomainError as exc:
        raise HTTPException(400, str(exc)) from exc
    except ConsistencyError as exc:
        logger.exception("q bracket certificate failed")
        raise HTTPException(500, str(exc)) from exc


@router.post(
    "/jobs/solve",
    status_code=202,
    summary="Start a background Picard solve",
    description=(
        "Start a background job running the Picard iteration for u = u_k + A h at the given k. "
        "Returns a unique job_id that can be used to check job status and download the solution.\n\n"
        "**Request body:** `{ 'k': 1000, 'tol': 1e-14, 'max_iter': 200 }` (tol and max_iter optional).\n\n"
        "**Response:**\n"
        "- 202 Accepted: `{ 'job_id': '<uuid>' }`.\n"
        "- 422 Unprocessable Entity: invalid parameters."
    ),
    response_description="Job accepted. Returns job_id.",
    responses={
        202: {
            "description": "Job accepted. Returns job_id.",
            "content": {"application/json": {"example": JOB_ACCEPTED_EXAMPLE}},
        },
        422: {"description": "Invalid parameters."},
    },
)
async def post_solve_job(
    request: SolveJobRequest, background_tasks: BackgroundTasks, db: DBHelper = Depends(get_db_conn)
) -> JSONResponse:
    """Queue a Picard solve."""
    return _start_job(db, background_tasks, SOLVE, request.model_dump())


@router.post(
    "/jobs/verify-bounds",
    status_code=202,
    summary="Start a background bound-suite run",
    description=(
        "Start a background job running every registered bound check. The artifact is "
        "`{ 'config': ..., 'q': ..., 'reports': [...] }` with reports sorted by name.\n\n"
        "**Request body:** `{ 'k': 100, 'scan_depth': 48, 'strict': false, 'seed': 1729 }` (all optional).\n\n"
        "**Response:**\n"
        "- 202 Accepted: `{ 'job_id': '<uuid>' }`.\n"
        "- 422 Unprocessable Entity: k below 100 or an invalid scan depth."
    ),
    response_description="Job accepted. Returns job_id.",
    responses={
        202: {
            "description": "Job accepted. Returns job_id.",
            "content": {"application/json": {"example": JOB_ACCEPTED_EXAMPLE}},
        },
        422: {"description": "Invalid parameters."},
    },
)
async def post_verify_job(
    request: VerifyJobRequest, background_tasks: BackgroundTasks, db: DBHelper = Depends(get_db_conn)
) -> JSONResponse:
    """Queue a bound-suite run."""
    return _start_job(db, background_tasks, VERIFY_BOUNDS, request.model_dump())


@router.get(
    "/status/{job_id}",
    response_model=JobStatus,
    summary="Get job status",
    description=(
        "Check the status of a job by job_id.\n\n"
        "**Path parameter:**\n"
        "- `job_id`: The job identifier returned by /jobs/solve or /jobs/verify-bounds.\n\n"
        "**Response:**\n"
        "- 200 OK: Returns job kind, status, creation and completion timestamps, and error if any.\n"
        "- 404 Not Found: If the job_id does not exist."
    ),
    response_description="Job status and metadata.",
    responses={
        200: {
            "description": "Job found.",
            "content": {
                "application/json": {
                    "example": {
                        "kind": "solve",
                        "status": "completed",
                        "created_at": "2026-05-18T10:30:49Z",
                        "completed_at": "2026-05-18T10:31:10Z",
                        "error": None,
                    }
                }
            },
        },
        404: {
            "description": "Job not found.",
            "content": {"application/json": {"example": {"detail": "Job not found"}}},
        },
    },
)
async def get_status(job_id: str, db: DBHelper = Depends(get_db_conn)) -> dict:
    """Get the status of a job."""
    try:
        row = db.get_job_status(job_id)
    finally:
        db.close()
    if not row:
        raise HTTPException(404, "Job not found")
    return row


@router.get(
    "/download/{job_id}",
    summary="Download the artifact of a completed job",
    description=(
        "Download the JSON artifact of a completed job.\n\n"
        "**Path parameter:**\n"
        "- `job_id`: The job identifier.\n\n"
        "**Response:**\n"
        "- 200 OK: the solution or suite artifact as an attachment.\n"
        "- 404 Not Found: If the job is not complete or does not exist."
    ),
    response_description="JSON artifact.",
    responses={
        200: {"description": "JSON artifact download."},
        404: {
            "description": "Job not found or not complete.",
            "content": {"application/json": {"example": {"detail": "Job not found"}}},
        },
    },
)
async def download(job_id: str, db: DBHelper = Depends(get_db_conn)) -> Response:
    """Return the stored artifact of a completed job."""
    try:
        artifact = db.get_job_result(job_id)
    finally:
        db.close()
    if artifact is None:
        raise HTTPException(404, "Job not found")
    return Response(
        content=artifact,
        media_type="application/json",
        headers={"Content-Disposition": f"attachment; filename=artifact_{job_id}.json"},
    )


@router.get(
    "/health",
    summary="Health check",
    description="Simple health check endpoint. Returns status ok.",
    response_description="Status ok.",
    responses={200: {"description": "API is healthy.", "content": {"application/json": {"example": {"status": "ok"}}}}},
)
async def health() -> dict:
    """Health check endpoint."""
    return {"status": "ok"}
