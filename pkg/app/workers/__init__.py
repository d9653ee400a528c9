"""Workers package: provides background job orchestration and runners."""

from .job_runner import run_job  # noqa: F401
