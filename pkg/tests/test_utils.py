"""Tests for the logging helpers."""

import logging
from pathlib import Path

from app.core.utils import LOGGER_ROOT, attach_file_handler, get_logger, set_verbosity


def test_get_logger_namespaces_and_isolates() -> None:
    """Bare names move under the project namespace; repeated calls do not stack handlers."""
    logger = get_logger("sample")
    again = get_logger("cubic-wave.sample")
    if logger is not again or logger.name != f"{LOGGER_ROOT}.sample":
        msg = f"Expected one logger named {LOGGER_ROOT}.sample, got {logger.name}"
        raise AssertionError(msg)
    if logger.propagate or len(logger.handlers) != 1:
        msg = "project loggers must not propagate and must own exactly one stream handler"
        raise AssertionError(msg)


def test_verbosity_is_inherited() -> None:
    """Children follow the level set on the namespace root."""
    logger = get_logger("sample.verbosity")
    set_verbosity(verbose=True)
    debug = logger.isEnabledFor(logging.DEBUG)
    set_verbosity(verbose=False)
    if not debug or logger.isEnabledFor(logging.DEBUG):
        msg = "DEBUG should follow the verbose flag"
        raise AssertionError(msg)


def test_attach_file_handler(tmp_path: Path) -> None:
    """Records of the named loggers land in the log file, once per record."""
    log_file = tmp_path / "logs" / "sample.log"
    attach_file_handler(log_file, ["sample.file"])
    attach_file_handler(log_file, ["sample.file"])
    logger = get_logger("sample.file")
    logger.warning("written once")
    for handler in logger.handlers:
        handler.flush()
    if log_file.read_text().count("written once") != 1:
        msg = f"Expected one record in {log_file}"
        raise AssertionError(msg)
