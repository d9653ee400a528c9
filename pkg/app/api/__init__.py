"""API package: provides FastAPI dependencies and route definitions for the application."""

from .dependencies import get_db_conn, get_solver_defaults  # noqa: F401
from .routes import router  # noqa: F401
