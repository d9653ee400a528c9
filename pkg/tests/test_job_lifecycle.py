"""Integration test for the job lifecycle: submit, status, and download."""

import json
import time

from fastapi.testclient import TestClient

HTTP_200_OK = 200
HTTP_202_ACCEPTED = 202


def _submit(client: TestClient, path: str, body: dict) -> str:
    response = client.post(path, json=body)
    if response.status_code != HTTP_202_ACCEPTED:
        msg = f"Expected status {HTTP_202_ACCEPTED}, got {response.status_code}"
        raise AssertionError(msg)
    job_id = response.json().get("job_id")
    if not job_id:
        msg = "Expected a job_id in the response"
        raise AssertionError(msg)
    return job_id


def _wait(client: TestClient, job_id: str) -> dict:
    status: dict = {}
    for _ in range(20):
        status_resp = client.get(f"/status/{job_id}")
        if status_resp.status_code != HTTP_200_OK:
            msg = f"Expected status {HTTP_200_OK}, got {status_resp.status_code}"
            raise AssertionError(msg)
        status = status_resp.json()
        if status["status"] in ("completed", "error"):
            break
        time.sleep(0.5)
    return status


def _download(client: TestClient, job_id: str) -> dict:
    download_resp = client.get(f"/download/{job_id}")
    if download_resp.status_code != HTTP_200_OK:
        msg = f"Expected status {HTTP_200_OK}, got {download_resp.status_code}"
        raise AssertionError(msg)
    return json.loads(download_resp.content)


def test_solve_job_lifecycle(client: TestClient) -> None:
    """A solve job at k = 79675 completes and its artifact carries the solution and config."""
    job_id = _submit(client, "/jobs/solve", {"k": 79_675})
    status = _wait(client, job_id)
    if status["status"] != "completed" or status["kind"] != "solve":
        msg = f"Expected a completed solve job, got {status}"
        raise AssertionError(msg)
    artifact = _download(client, job_id)
    header = (artifact["regime"], artifact["config"]["k"], bool(artifact["u"]["modes"]))
    if header != ("theorem range", 79_675, True):
        msg = f"Unexpected solve artifact header: regime={artifact['regime']}"
        raise AssertionError(msg)


def test_failed_job_records_error(client: TestClient) -> None:
    """A solve that cannot converge ends in the error state and has nothing to download."""
    job_id = _submit(client, "/jobs/solve", {"k": 79_675, "max_iter": 1})
    status = _wait(client, job_id)
    if status["status"] != "error" or not status["error"]:
        msg = f"Expected an error status with a message, got {status}"
        raise AssertionError(msg)
    if client.get(f"/download/{job_id}").status_code != 404:  # noqa: PLR2004
        msg = "A failed job must not expose an artifact"
        raise AssertionError(msg)


def test_verify_job_lifecycle(client: TestClient) -> None:
    """A bound-suite job completes with every report passing."""
    job_id = _submit(client, "/jobs/verify-bounds", {"k": 100, "scan_depth": 8})
    status = _wait(client, job_id)
    if status["status"] != "completed":
        msg = f"Expected a completed verify job, got {status}"
        raise AssertionError(msg)
    artifact = _download(client, job_id)
    failed = [report["name"] for report in artifact["reports"] if not report["pass"]]
    if failed or artifact["config"]["scan_depth"] != 8:  # noqa: PLR2004
        msg = f"Failed reports: {failed}"
        raise AssertionError(msg)
