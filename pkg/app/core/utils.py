"""Logging and filesystem helpers for the cubic-wave-periodic project.

Every project logger lives under the ``cubic-wave`` namespace, owns one colorized stream handler and does not
propagate. Levels are set once on the namespace root and inherited by the children.
"""

import logging
from collections.abc import Iterable
from datetime import UTC, datetime
from pathlib import Path

import colorlog

LOGGER_ROOT = "cubic-wave"
FILE_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def get_logger(name: str) -> logging.Logger:
    """Get a logger with a colorized format for the project."""
    if name != LOGGER_ROOT and not name.startswith(f"{LOGGER_ROOT}."):
        name = f"{LOGGER_ROOT}.{name}"
    logger = logging.getLogger(name)
    if not logger.handlers:
        handler = logging.StreamHandler()
        formatter = colorlog.ColoredFormatter(
            f"%(log_color)s{FILE_FORMAT}",
            datefmt="%Y-%m-%d %H:%M:%S",
            log_colors={
                "DEBUG": "cyan",
                "INFO": "green",
                "WARNING": "yellow",
                "ERROR": "red",
                "CRITICAL": "bold_red",
            },
        )
        handler.setFormatter(formatter)
        logger.addHandler(handler)
    logger.propagate = False
    return logger


def set_verbosity(*, verbose: bool) -> None:
    """DEBUG on the namespace root when verbose (every Picard increment), INFO otherwise."""
    logging.getLogger(LOGGER_ROOT).setLevel(logging.DEBUG if verbose else logging.INFO)


def attach_file_handler(log_file: str | Path, names: Iterable[str]) -> None:
    """Mirror the named loggers into a plain-text file; loggers that already have a file handler are skipped."""
    loggers = [get_logger(name) for name in names]
    pending = [lg for lg in loggers if not any(isinstance(h, logging.FileHandler) for h in lg.handlers)]
    if not pending:
        return
    path = Path(log_file)
    ensure_dir(path.parent)
    file_handler = logging.FileHandler(path)
    file_handler.setFormatter(logging.Formatter(FILE_FORMAT))
    for logger in pending:
        logger.addHandler(file_handler)


def ensure_dir(path: str | Path) -> None:
    """Ensure a directory exists (like mkdir -p)."""
    Path(path).mkdir(parents=True, exist_ok=True)


def utcnow_iso() -> str:
    """Get the current UTC time as an ISO8601 string."""
    return datetime.now(UTC).isoformat()
