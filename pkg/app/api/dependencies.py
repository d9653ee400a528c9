"""FastAPI dependencies for DI (solver defaults and the job DB).

This module provides dependency injection helpers so the endpoints can be tested with overridden settings or a
separate database.
"""

from app.core.db import DBHelper, get_db
from app.core.settings import SolverDefaults, get_settings


def get_solver_defaults() -> SolverDefaults:
    """Provide the configured solver defaults."""
    return get_settings().solver


def get_db_conn() -> DBHelper:
    """Provide a database helper for dependency injection."""
    return get_db()
