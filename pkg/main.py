"""Main entrypoint and application factory for the cubic-wave-periodic API.

This module initializes the FastAPI application, configures logging, creates the jobs table, and exposes the Scalar
API reference endpoint for interactive OpenAPI documentation. It also includes the main entrypoint for running the
app with Uvicorn.
"""

from collections.abc import AsyncGenerator
from contextlib import asynccontextmanager

from fastapi import FastAPI
from fastapi.responses import HTMLResponse
from scalar_fastapi import get_scalar_api_reference

from app.api.routes import router
from app.core.db import init_db
from app.core.settings import get_settings
from app.core.utils import attach_file_handler, set_verbosity

SERVICE_LOGGERS = (
    "cubic-wave.api",
    "cubic-wave.worker",
    "cubic-wave.qroot",
    "cubic-wave.solver",
    "cubic-wave.verifier",
)


def setup_logging() -> None:
    """Console logging at INFO plus a plain file handler at the configured log file."""
    set_verbosity(verbose=False)
    attach_file_handler(get_settings().log_file, SERVICE_LOGGERS)


setup_logging()


@asynccontextmanager
async def lifespan(app: FastAPI) -> AsyncGenerator[None, None]:
    """Lifespan event handler creating the jobs table."""
    _ = app
    init_db()
    yield


app = FastAPI(
    lifespan=lifespan,
    docs_url="/docs",
    redoc_url="/redoc",
    title="Cubic Wave Periodic API",
    description="""
    Spectral solver and bound verifier for time-periodic solutions of the cubic wave equation.

    **Endpoints:**
    - `POST /solve-q`: Solve the theta-series equation for q.
    - `POST /jobs/solve`: Start a background Picard solve. Returns a `job_id`.
    - `POST /jobs/verify-bounds`: Start a background bound-suite run. Returns a `job_id`.
    - `GET /status/{{job_id}}`: Check the status of a job.
    - `GET /download/{{job_id}}`: Download the JSON artifact of a completed job.
    - `GET /health`: Health check endpoint.
    - `GET /scalar`: Interactive Scalar OpenAPI documentation.
    """,
    version="1.0.0",
)
app.include_router(router)


@app.get("/scalar", include_in_schema=False)
async def scalar_docs() -> HTMLResponse:
    """Return Scalar API reference."""
    return get_scalar_api_reference(openapi_url=app.openapi_url, title=app.title)


if __name__ == "__main__":
    import uvicorn

    settings = get_settings()
    uvicorn.run("main:app", host=settings.server_host, port=settings.server_port, reload=True)
