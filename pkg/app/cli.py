"""Command-line front end.

    cubic-wave solve-q       [--tol T] [--cutoff N]
    cubic-wave build-approx  --k K [--n-f N]
    cubic-wave solve         --k K [--tol T] [--max-iter N] [--n-f N]
    cubic-wave verify-bounds [--k K] [--scan-depth M] [--lattice L] [--strict] [--seed S]
    cubic-wave timecheck     --in FILE [--nx N] [--nt N] [--scheme spectral|fd]
    cubic-wave export-grid   --in FILE [--ntau N] [--nx N]

Every subcommand accepts --out FILE (stdout otherwise). JSON artifacts embed the RunConfig and q; export-grid writes
CSV with header tau,x,u. Exit codes: 0 success, 1 failed check or non-convergence, 2 usage or domain error.
"""

import argparse
import json
import math
import sys
from collections.abc import Callable, Sequence
from fractions import Fraction
from pathlib import Path
from typing import Any

import numpy as np
import pandas as pd
from pydantic import ValidationError

from app.core.errors import (
    ConfigurationError,
    ConsistencyError,
    ConvergenceError,
    DivergenceError,
    DomainError,
    OutOfRangeError,
)
from app.core.models import FieldPayload, RunConfig, TimecheckPayload
from app.core.settings import SolverDefaults, resolve
from app.core.utils import get_logger, set_verbosity
from app.spectral.approx import FrequencyContext, build_coeffs, build_uk
from app.spectral.core import WeightConfig, evaluate, field_from_payload, field_to_payload
from app.spectral.fixed_point import solve_for_k
from app.spectral.operators import OperatorAConstants
from app.spectral.qroot import solve_q
from app.spectral.timedomain import SCHEMES, period_check
from app.verifier import run_suite

logger = get_logger("cubic-wave.cli")

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_USAGE = 2


def _write(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")
        return
    path = Path(out)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(text)
    logger.info(f"Wrote {path}")


def _dump(payload: dict[str, Any], out: str | None) -> None:
    _write(json.dumps(payload, indent=2), out)


def _read_artifact(path: str) -> dict[str, Any]:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        msg = f"cannot read artifact {path}: {exc}"
        raise ConfigurationError(msg) from exc
    if not isinstance(data, dict) or "u" not in data:
        msg = f"{path} holds no field 'u'; pass the output of solve or build-approx"
        raise ConfigurationError(msg)
    return data


def _config(args: argparse.Namespace, defaults: SolverDefaults, **values: Any) -> RunConfig:  # noqa: ANN401
    return RunConfig(subcommand=args.command, output_path=args.out, defaults=defaults, **values)


def cmd_solve_q(args: argparse.Namespace, defaults: SolverDefaults) -> int:
    """Bisect the theta-series equation for q."""
    tol = resolve(args.tol, defaults.q_tol)
    cutoff = resolve(args.cutoff, defaults.q_series_cutoff)
    root = solve_q(tol, cutoff)
    config = _config(args, defaults, tol=tol)
    _dump({"config": config.model_dump(), **root.model_dump()}, args.out)
    return EXIT_OK


def cmd_build_approx(args: argparse.Namespace, defaults: SolverDefaults) -> int:
    """Tabulate f, the betas, the preconditioner entries and u_k for one k."""
    n_f = resolve(args.n_f, defaults.n_f)
    root = solve_q(defaults.q_tol, defaults.q_series_cutoff)
    coeffs = build_coeffs(root.q, n_f)
    ctx = FrequencyContext(args.k)
    constants = OperatorAConstants.from_coeffs(coeffs)
    uk = build_uk(ctx, coeffs, WeightConfig(defaults.rho_fraction))
    config = _config(args, defaults, k=args.k, n_f=n_f)
    payload = {
        "config": config.model_dump(),
        "q": root.q,
        "k": args.k,
        "omega": ctx.omega_float,
        "omega_exact": str(ctx.omega),
        "f": list(coeffs.f),
        "f_tail": coeffs.f_tail,
        "beta0": coeffs.beta0,
        "beta1": coeffs.beta1,
        "a00": float(constants.a00),
        "a01": float(constants.a01),
        "u": field_to_payload(uk).model_dump(),
    }
    _dump(payload, args.out)
    return EXIT_OK


def cmd_solve(args: argparse.Namespace, defaults: SolverDefaults) -> int:
    """Picard solve for one k."""
    n_f = resolve(args.n_f, defaults.n_f)
    effective = defaults.model_copy(update={"n_f": n_f})
    report = solve_for_k(args.k, effective, tol=args.tol, max_iter=args.max_iter)
    config = _config(
        args,
        effective,
        k=args.k,
        tol=resolve(args.tol, defaults.solve_tol),
        max_iter=resolve(args.max_iter, defaults.max_iter),
        n_f=n_f,
    )
    _dump(report.to_payload(config).model_dump(), args.out)
    return EXIT_OK


def cmd_verify_bounds(args: argparse.Namespace, defaults: SolverDefaults) -> int:
    """Run the bound suite; exit 0 iff every report passes."""
    config = _config(
        args,
        defaults,
        k=resolve(args.k, defaults.lemma_k),
        scan_depth=resolve(args.scan_depth, defaults.scan_depth),
        lattice_cutoff=resolve(args.lattice, defaults.lattice_cutoff),
        seed=resolve(args.seed, defaults.seed),
        strict=args.strict,
    )
    artifact = run_suite(config)
    _dump(artifact.model_dump(by_alias=True), args.out)
    return EXIT_OK if artifact.passed else EXIT_FAILED


def cmd_timecheck(args: argparse.Namespace, defaults: SolverDefaults) -> int:
    """Integrate one period from a stored solution."""
    data = _read_artifact(args.input)
    u = field_from_payload(FieldPayload.model_validate(data["u"]))
    k = int(data["k"])
    omega = float(Fraction(data.get("omega_exact") or FrequencyContext(k).omega))
    nx = resolve(args.nx, defaults.nx)
    nt = resolve(args.nt, defaults.nt)
    result = period_check(u, omega, nx, nt, args.scheme)
    config = _config(args, defaults, k=k, nx=nx, nt=nt, scheme=args.scheme, input_path=args.input)
    payload = TimecheckPayload(
        config=config,
        q=float(data["q"]),
        k=k,
        return_error=result.return_error,
        energy_drift=result.energy_drift,
    )
    _dump(payload.model_dump(), args.out)
    return EXIT_OK


def grid_frame(field_payload: FieldPayload, ntau: int, nx: int) -> pd.DataFrame:
    """u on the uniform grid [0, 2 pi] x [0, pi], row-major in (tau, x)."""
    if ntau < 2 or nx < 2:  # noqa: PLR2004
        msg = f"grid needs at least two nodes per axis, got ntau={ntau}, nx={nx}"
        raise DomainError(msg)
    u = field_from_payload(field_payload)
    tau, x = np.meshgrid(np.linspace(0.0, 2 * math.pi, ntau), np.linspace(0.0, math.pi, nx), indexing="ij")
    values = evaluate(u, tau, x)
    return pd.DataFrame({"tau": tau.ravel(), "x": x.ravel(), "u": np.asarray(values).ravel()})


def cmd_export_grid(args: argparse.Namespace, defaults: SolverDefaults) -> int:
    """Dump u on a uniform grid as CSV."""
    data = _read_artifact(args.input)
    ntau, nx = resolve(args.ntau, defaults.grid_ntau), resolve(args.nx, defaults.grid_nx)
    frame = grid_frame(FieldPayload.model_validate(data["u"]), ntau, nx)
    _write(frame.to_csv(index=False), args.out)
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.Namespace, SolverDefaults], int]] = {
    "solve-q": cmd_solve_q,
    "build-approx": cmd_build_approx,
    "solve": cmd_solve,
    "verify-bounds": cmd_verify_bounds,
    "timecheck": cmd_timecheck,
    "export-grid": cmd_export_grid,
}


def build_parser() -> argparse.ArgumentParser:
    """Argument parser with one sub-parser per subcommand."""
    parser = argparse.ArgumentParser(
        prog="cubic-wave",
        description="Time-periodic solutions of the cubic wave equation: spectral solver and bound verifier.",
    )
    parser.add_argument("--verbose", action="store_true", help="log every Picard increment")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name: str, help_text: str) -> argparse.ArgumentParser:
        command = sub.add_parser(name, help=help_text)
        command.add_argument("--out", help="write the artifact here instead of stdout")
        return command

    solve_q_cmd = add("solve-q", "solve the theta-series equation for q")
    solve_q_cmd.add_argument("--tol", type=float, help="bisection tolerance")
    solve_q_cmd.add_argument("--cutoff", type=int, help="series cutoff of g")

    approx_cmd = add("build-approx", "tabulate the approximate solution u_k")
    approx_cmd.add_argument("--k", type=int, required=True)
    approx_cmd.add_argument("--n-f", type=int, dest="n_f")

    solve_cmd = add("solve", "Picard iteration for u = u_k + A h")
    solve_cmd.add_argument("--k", type=int, required=True)
    solve_cmd.add_argument("--tol", type=float)
    solve_cmd.add_argument("--max-iter", type=int, dest="max_iter")
    solve_cmd.add_argument("--n-f", type=int, dest="n_f")

    verify_cmd = add("verify-bounds", "run the bound suite")
    verify_cmd.add_argument("--k", type=int, help="k for the lemma checks")
    verify_cmd.add_argument("--scan-depth", type=int, dest="scan_depth")
    verify_cmd.add_argument("--lattice", type=int, help="c-lattice cutoff")
    verify_cmd.add_argument("--strict", action="store_true", help="add the exact rational re-checks")
    verify_cmd.add_argument("--seed", type=int)

    time_cmd = add("timecheck", "integrate one period in time from a solve artifact")
    time_cmd.add_argument("--in", dest="input", required=True)
    time_cmd.add_argument("--nx", type=int)
    time_cmd.add_argument("--nt", type=int)
    time_cmd.add_argument("--scheme", choices=SCHEMES, default="spectral")

    grid_cmd = add("export-grid", "write u on a uniform (tau, x) grid as CSV")
    grid_cmd.add_argument("--in", dest="input", required=True)
    grid_cmd.add_argument("--ntau", type=int)
    grid_cmd.add_argument("--nx", type=int)
    return parser


def dispatch(argv: Sequence[str] | None = None, defaults: SolverDefaults | None = None) -> int:
    """Parse argv, run the subcommand and map errors to exit codes."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    set_verbosity(verbose=args.verbose)
    try:
        return COMMANDS[args.command](args, defaults or SolverDefaults())
    except (DomainError, ConfigurationError, OutOfRangeError, ValidationError) as exc:
        logger.error(f"{args.command}: {exc}")  # noqa: TRY400
        return EXIT_USAGE
    except (ConvergenceError, DivergenceError, ConsistencyError) as exc:
        logger.error(f"{args.command}: {exc}")  # noqa: TRY400
        return EXIT_FAILED


def main() -> None:
    """Console entry point."""
    sys.exit(dispatch())
