"""Command-line surface.

Subcommands: ``variance``, ``cov``, ``matrix``, ``qp``, ``oracle``,
``estimate``, ``check``. JSON is the canonical output format; CSV exists for
the matrix subcommand only. Exit codes: 0 success, 2 invalid input,
3 internal numerical failure (including a failed invariant check).
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from covbounds import covariance, matrices, oracles, qp
from covbounds.estimation import estimate_moments, read_regime_csv
from covbounds.exceptions import CovBoundsError, SchemaError
from covbounds.moments import (
    ScenarioSet,
    extract_pair,
    load_scenario_set,
    scenario_set_to_dict,
    validate,
)
from covbounds.validation import near_equal
from covbounds.variance import lower_variance, upper_variance

EXIT_OK = 0
EXIT_BAD_INPUT = 2
EXIT_NUMERICAL = 3


@dataclass(frozen=True)
class RunConfig:
    """One resolved CLI invocation."""

    command: str
    input_path: str
    output_path: str | None = None
    fmt: str = "json"
    pair: tuple[int, int] | None = None
    grid: int = 200
    order: str = "maximin"
    widen: float = 1.0
    allow_non_psd: bool = False
    witness: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.command in ("oracle",) and self.grid < 2:
            raise SchemaError(f"--grid must be >= 2, got {self.grid}")
        if self.fmt == "csv" and self.command != "matrix":
            raise SchemaError("CSV output is available for the matrix subcommand only")


def _load_validated_set(config: RunConfig) -> ScenarioSet:
    return validate(load_scenario_set(config.input_path), allow_non_psd=config.allow_non_psd)


def _check_pair_indices(pair, n: int) -> tuple[int, int]:
    i, j = pair
    if not (0 <= i < n and 0 <= j < n):
        raise SchemaError(f"--pair indices must be in [0, {n}), got {i} {j}")
    return i, j


def _cmd_variance(config: RunConfig) -> dict:
    sset = _load_validated_set(config)
    upper, lower = [], []
    for i in range(sset.n_vars):
        p = extract_pair(sset, i, i)
        d = p.c + p.a**2
        upper.append(upper_variance(p.a, d))
        lower.append(lower_variance(p.a, d))
    report = {
        "variables": list(sset.variable_names),
        "upper": [b.value for b in upper],
        "lower": [b.value for b in lower],
    }
    if config.witness:
        report["upper_witnesses"] = [b.to_dict()["witness"] for b in upper]
        report["lower_witnesses"] = [b.to_dict()["witness"] for b in lower]
    return report


def _cmd_cov(config: RunConfig) -> dict:
    if config.pair is None:
        raise SchemaError("cov requires --pair I J")
    sset = _load_validated_set(config)
    i, j = _check_pair_indices(config.pair, sset.n_vars)
    p = extract_pair(sset, i, j)
    bounds = covariance.cov_bounds(p)
    return {
        "pair": [i, j],
        "variables": [sset.variable_names[i], sset.variable_names[j]],
        "upper": bounds.upper.to_dict(),
        "lower": bounds.lower.to_dict(),
    }


def _cmd_matrix(config: RunConfig) -> dict:
    sset = _load_validated_set(config)
    bounds = matrices.cov_bounds_matrix(sset)
    report = bounds.to_dict()
    report["variables"] = list(sset.variable_names)
    return report


def _matrix_csv(report: dict) -> str:
    names = report["variables"]
    lines = ["matrix,variable," + ",".join(names)]
    for key in ("upper", "lower"):
        for name, row in zip(names, report[key]):
            lines.append(f"{key},{name}," + ",".join(repr(v) for v in row))
    return "\n".join(lines) + "\n"


def _cmd_qp(config: RunConfig) -> dict:
    with open(config.input_path, "r", encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"invalid JSON in {config.input_path}: {exc}") from exc
    for key in ("m", "n", "k"):
        if not isinstance(doc, dict) or key not in doc:
            raise SchemaError("qp input must be an object with keys m, n, k")
    problem = qp.BilinearQp(doc["m"], doc["n"], doc["k"])
    solution = qp.solve(problem)
    _, inertia = qp.q_matrix(problem)
    report = solution.to_dict()
    report["inertia"] = list(inertia)
    return report


def _cmd_oracle(config: RunConfig) -> dict:
    sset = _load_validated_set(config)
    i, j = _check_pair_indices(config.pair or (0, min(1, sset.n_vars - 1)), sset.n_vars)
    p = extract_pair(sset, i, j)
    grid = oracles.GridSpec.for_pair(p, config.grid, widen=config.widen)
    grid_value = oracles.grid_maximin_cov(p, grid, order=config.order)
    exact_upper = covariance.upper_cov(p).value
    exact_lower = covariance.lower_cov(p).value
    return {
        "pair": [i, j],
        "grid": config.grid,
        "order": config.order,
        "widen": config.widen,
        "exact_upper": exact_upper,
        "exact_lower": exact_lower,
        "grid_value": grid_value,
        "delta_vs_exact_upper": grid_value - exact_upper,
    }


def _cmd_estimate(config: RunConfig) -> dict:
    samples = read_regime_csv(config.input_path)
    sset = validate(estimate_moments(samples), allow_non_psd=config.allow_non_psd)
    return scenario_set_to_dict(sset)


def _cmd_check(config: RunConfig) -> dict:
    """Run the cross-module invariant suite on one scenario set."""
    sset = _load_validated_set(config)
    bounds = matrices.cov_bounds_matrix(sset)
    checks: dict[str, bool] = {}

    checks["bound_matrices_symmetric"] = bool(
        np.array_equal(bounds.upper, bounds.upper.T) and np.array_equal(bounds.lower, bounds.lower.T)
    )
    checks["lower_below_upper"] = bool(np.all(bounds.lower <= bounds.upper + 1e-12))

    diag_ok = True
    witness_ok = True
    bracket_ok = True
    cauchy_schwarz_ok = True
    envelope_ok = True
    lam_grid = np.linspace(0.0, 1.0, 201)
    for i in range(sset.n_vars):
        pii = extract_pair(sset, i, i)
        cov_route = covariance.upper_cov(pii).value
        if not near_equal(cov_route, bounds.upper[i, i], 1e-9):
            diag_ok = False
        for j in range(i, sset.n_vars):
            p = extract_pair(sset, i, j)
            cell = bounds.witnesses[i][j]
            for result in (cell.upper, cell.lower):
                achieved = covariance.mixture_cov(p, result.weights(p.k))
                if not near_equal(achieved, result.value, 1e-9):
                    witness_ok = False
            report = covariance.bounds_report(p)
            if not (report.bracket_low - 1e-9 <= bounds.upper[i, j] <= report.bracket_high + 1e-9):
                bracket_ok = False
            limit = np.sqrt(bounds.upper[i, i] * bounds.upper[j, j])
            if abs(bounds.upper[i, j]) > limit + 1e-9:
                cauchy_schwarz_ok = False
            # Two-scenario mixtures along every edge stay inside the bounds.
            for r in range(p.k):
                for s in range(r + 1, p.k):
                    vals = (
                        lam_grid * p.c[r]
                        + (1 - lam_grid) * p.c[s]
                        + lam_grid * (1 - lam_grid) * (p.a[r] - p.a[s]) * (p.b[r] - p.b[s])
                    )
                    if vals.max() > bounds.upper[i, j] + 1e-9:
                        envelope_ok = False
                    if vals.min() < bounds.lower[i, j] - 1e-9:
                        envelope_ok = False
    checks["diagonal_matches_variance"] = diag_ok
    checks["witnesses_reproduce_bounds"] = witness_ok
    checks["bracket_contains_upper"] = bracket_ok
    checks["cauchy_schwarz"] = cauchy_schwarz_ok
    checks["pairwise_mixtures_within_bounds"] = envelope_ok

    envelope = matrices.uncertainty_set_check(sset, 1000, seed=config.seed)
    checks["mixtures_psd"] = envelope.all_psd
    checks["mixtures_within_bounds"] = envelope.all_within_bounds

    return {
        "checks": checks,
        "envelope": envelope.to_dict(),
        "passed": all(checks.values()),
    }


_COMMANDS = {
    "variance": _cmd_variance,
    "cov": _cmd_cov,
    "matrix": _cmd_matrix,
    "qp": _cmd_qp,
    "oracle": _cmd_oracle,
    "estimate": _cmd_estimate,
    "check": _cmd_check,
}


def run(config: RunConfig) -> tuple[int, str]:
    """Execute one invocation; returns (exit code, serialized report)."""
    report = _COMMANDS[config.command](config)
    if config.command == "matrix" and config.fmt == "csv":
        text = _matrix_csv(report)
    else:
        text = json.dumps(report, indent=2) + "\n"
    code = EXIT_OK
    if config.command == "check" and not report["passed"]:
        code = EXIT_NUMERICAL
    return code, text


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="covbounds",
        description="Exact covariance bounds under finitely many probability scenarios.",
    )
    sub = parser.add_subparsers(dest="command", required=True)
    specs = {
        "variance": "per-variable upper/lower variances",
        "cov": "covariance bounds for one variable pair",
        "matrix": "full covariance-bound matrices with PSD flags",
        "qp": "exact simplex bilinear quadratic program",
        "oracle": "grid-search value next to the exact one",
        "estimate": "regime CSV to scenario JSON",
        "check": "invariant suite on a scenario set",
    }
    for name, help_text in specs.items():
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--input", required=True, help="input file path")
        p.add_argument("--output", default=None, help="output file path (default stdout)")
        p.add_argument("--format", default="json", choices=("json", "csv"))
        p.add_argument("--pair", nargs=2, type=int, metavar=("I", "J"), default=None)
        p.add_argument("--grid", type=int, default=200)
        p.add_argument("--order", default="maximin", choices=("maximin", "minimax"))
        p.add_argument("--widen", type=float, default=1.0)
        p.add_argument("--allow-non-psd", action="store_true")
        p.add_argument("--witness", action="store_true")
        p.add_argument("--seed", type=int, default=0)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            output_path=args.output,
            fmt=args.format,
            pair=tuple(args.pair) if args.pair is not None else None,
            grid=args.grid,
            order=args.order,
            widen=args.widen,
            allow_non_psd=args.allow_non_psd,
            witness=args.witness,
            seed=args.seed,
        )
        code, text = run(config)
    except (CovBoundsError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BAD_INPUT
    except Exception as exc:  # pragma: no cover - defensive
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
