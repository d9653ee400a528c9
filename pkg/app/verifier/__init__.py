"""Bound verifier: numeric checks of every estimate in the existence argument, and the suite that runs them."""

from .registry import CheckRegistry  # noqa: F401
from .suite import run_suite  # noqa: F401
