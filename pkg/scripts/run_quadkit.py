#!/usr/bin/env python3
"""CLI entrypoint for quadkit: quadratize, verify, compare, truth2poly, reproduce."""

import argparse
import json
import sys
from dataclasses import asdict, dataclass
from pathlib import Path
from typing import Literal

# Add project root to path
sys.path.insert(0, str(Path(__file__).parent.parent))

from src.baselines import compare, metrics
from src.errors import BudgetExceededError, ConfigError, QuadkitError, VerificationFailedError
from src.loader import load_polynomial, parse_truth_table, read_qubo
from src.oracle import verify_perfect
from src.outputs import (
    atomic_write_text,
    format_metrics_table,
    format_polynomial,
    format_qubo,
    format_report,
    report_fields,
    write_json,
    write_manifest,
    write_metrics_table,
)
from src.partition import quadratize_n
from src.reproduce import reproduce
from src.schema import QuadkitConfig, load_config

Command = Literal["quadratize", "verify", "compare", "truth2poly", "reproduce"]
FILE_COMMANDS = ("quadratize", "verify", "compare", "truth2poly")


@dataclass
class RunConfig:
    """One command-line invocation."""

    command: Command
    input_path: Path | None = None
    output_path: Path = Path("outputs")
    method: Literal["theorem1", "rosenberg", "termwise"] = "theorem1"
    tolerance: float | None = None
    seed: int | None = None
    format: Literal["qubo", "poly", "report"] = "qubo"
    qubo_path: Path | None = None
    config_path: Path = Path("config/quadkit.yml")

    def __post_init__(self):
        if self.tolerance is not None and self.tolerance <= 0:
            raise ConfigError(f"tolerance must be positive, got {self.tolerance}")
        if self.command in FILE_COMMANDS and not self.input_path:
            raise ConfigError(f"{self.command} needs --input")
        if self.command == "verify" and not self.qubo_path:
            raise ConfigError("verify needs --qubo")


def _settings(config: RunConfig) -> QuadkitConfig:
    settings = load_config(config.config_path)
    if config.tolerance is not None:
        settings.tolerances.absolute = config.tolerance
        settings.tolerances.relative = config.tolerance
    if config.seed is not None:
        settings.seed = config.seed
    return settings


def _verify_or_raise(f, q, aux, settings: QuadkitConfig) -> bool:
    """True if verified, False if over budget; raises on failure."""
    tol = settings.tolerances
    try:
        report = verify_perfect(
            f, q, aux, tol=tol.absolute, tol_rel=tol.relative, budget_log2=settings.budget_log2
        )
    except BudgetExceededError as e:
        print(f"⚠ Verification skipped: {e}")
        return False
    if not report.ok:
        witness = {v + 1: bit for v, bit in report.witness.items()}
        raise VerificationFailedError(
            f"min over auxiliaries differs from f by {report.worst_gap:.6g} at {witness}"
        )
    print(f"✓ Verified on {report.assignments_checked} assignments")
    return True


def run_quadratize(config: RunConfig, settings: QuadkitConfig) -> None:
    f = load_polynomial(config.input_path, epsilon=settings.tolerances.epsilon)
    print(f"✓ Loaded {len(f)} terms on {len(f.variables)} variables")
    q = quadratize_n(f, method=config.method, tol=settings.tolerances.absolute)
    print(f"✓ {config.method}: {len(q.aux_vars)} auxiliary variables")
    if q.fallback_count:
        print(f"⚠ {q.fallback_count} group(s) needed the fallback search")

    n = max(f.variables, default=-1) + 1
    stem = config.input_path.stem
    config.output_path.mkdir(parents=True, exist_ok=True)
    fields = report_fields(q, metrics(q, f), config.method, n)

    if config.format != "report":
        if config.format == "qubo":
            text = format_qubo(q, n, digits=settings.outputs.qubo_digits)
            target = config.output_path / f"{stem}.qubo"
            model = read_qubo(text)
            checked, aux = model.polynomial, model.aux_vars
        else:
            text = format_polynomial(q.quadratic)
            target = config.output_path / f"{stem}.quad.poly"
            checked, aux = q.quadratic, q.aux_vars
        fields["verified"] = _verify_or_raise(f, checked, aux, settings)
        atomic_write_text(target, text)
        print(f"✓ Wrote {target.name}")

    atomic_write_text(config.output_path / f"{stem}.report.txt", format_report(fields))
    write_json(fields, config.output_path / f"{stem}.report.json")
    print(f"✓ Wrote {stem}.report.txt and {stem}.report.json")


def run_verify(config: RunConfig, settings: QuadkitConfig) -> None:
    f = load_polynomial(config.input_path, epsilon=settings.tolerances.epsilon)
    model = read_qubo(config.qubo_path.read_text())
    print(f"✓ Loaded QUBO with n={model.n}, m={model.m}")
    stray = [v + 1 for v in f.variables if v >= model.n]
    if stray:
        raise ConfigError(f"variables {stray} of the input are not originals of the QUBO")
    tol = settings.tolerances
    report = verify_perfect(
        f, model.polynomial, model.aux_vars,
        tol=tol.absolute, tol_rel=tol.relative, budget_log2=settings.budget_log2,
    )
    record = asdict(report)
    record["witness"] = {v + 1: bit for v, bit in report.witness.items()}
    print(json.dumps(record))
    if not report.ok:
        raise VerificationFailedError(
            f"min over auxiliaries differs from f by {report.worst_gap:.6g} at {record['witness']}"
        )
    print("✓ Perfect quadratization")


def run_compare(config: RunConfig, settings: QuadkitConfig) -> None:
    f = load_polynomial(config.input_path, epsilon=settings.tolerances.epsilon)
    table = compare(f, tol=settings.tolerances.absolute, budget_log2=settings.budget_log2)
    print(format_metrics_table(table, settings.outputs.decimals))
    if table["verified"].isna().any():
        print("⚠ Some rows were not verified (over budget)")
    target = config.output_path / f"{config.input_path.stem}.compare.csv"
    write_metrics_table(table, target)
    print(f"✓ Wrote {target.name}")


def run_truth2poly(config: RunConfig, settings: QuadkitConfig) -> None:
    p = parse_truth_table(config.input_path.read_text(), epsilon=settings.tolerances.epsilon)
    text = format_polynomial(p)
    target = config.output_path / f"{config.input_path.stem}.poly"
    atomic_write_text(target, text)
    print(text, end="")
    print(f"✓ Wrote {target.name} ({len(p)} terms)")


def run_reproduce(config: RunConfig, settings: QuadkitConfig) -> None:
    table = reproduce(settings)
    print(table.to_string(index=False))
    write_metrics_table(table, config.output_path / "reproduce.csv")
    failed = table[~table["passed"]]
    if len(failed):
        raise VerificationFailedError(
            f"{len(failed)} check(s) failed: " + ", ".join(
                f"{row.example}/{row.check}" for row in failed.itertuples()
            )
        )
    print(f"✓ All {len(table)} checks passed")


RUNNERS = {
    "quadratize": run_quadratize,
    "verify": run_verify,
    "compare": run_compare,
    "truth2poly": run_truth2poly,
    "reproduce": run_reproduce,
}


def run(config: RunConfig) -> int:
    """Execute one command and write its artifacts; returns the exit status.

    Raises:
        QuadkitError: On any failure; ``exit_code`` carries the status
    """
    print(f"Loading config from {config.config_path}...")
    settings = _settings(config)
    config.output_path.mkdir(parents=True, exist_ok=True)
    RUNNERS[config.command](config, settings)
    write_manifest(
        config.config_path, config.input_path, config.command, settings.seed, config.output_path
    )
    print("✓ Wrote manifest.json")
    return 0


def error_record(error: BaseException, exit_code: int) -> str:
    """Machine-readable one-line description of a failure."""
    return json.dumps(
        {"error": type(error).__name__, "message": str(error), "exit_code": exit_code}
    )


def main(argv: list[str] | None = None) -> int:
    """CLI entrypoint."""
    parser = argparse.ArgumentParser(
        description="Perfect quadratization of pseudo-Boolean functions",
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    parser.add_argument("command", choices=list(RUNNERS))
    parser.add_argument("--input", type=Path, default=None, help="Polynomial or truth-table file")
    parser.add_argument(
        "--output", type=Path, default=Path("outputs"), help="Output directory (default: outputs)"
    )
    parser.add_argument(
        "--method", choices=["theorem1", "rosenberg", "termwise"], default="theorem1"
    )
    parser.add_argument("--tolerance", type=float, default=None, help="Overrides the config")
    parser.add_argument("--seed", type=int, default=None, help="Recorded in the manifest")
    parser.add_argument("--format", choices=["qubo", "poly", "report"], default="qubo")
    parser.add_argument("--qubo", type=Path, default=None, help="QUBO file for verify")
    parser.add_argument(
        "--config", type=Path, default=Path("config/quadkit.yml"),
        help="Path to config file (default: config/quadkit.yml)",
    )
    args = parser.parse_args(argv)

    try:
        config = RunConfig(
            command=args.command,
            input_path=args.input,
            output_path=args.output,
            method=args.method,
            tolerance=args.tolerance,
            seed=args.seed,
            format=args.format,
            qubo_path=args.qubo,
            config_path=args.config,
        )
        return run(config)
    except QuadkitError as e:
        print(f"✗ {args.command} failed: {e}", file=sys.stderr)
        print(error_record(e, e.exit_code), file=sys.stderr)
        return e.exit_code
    except FileNotFoundError as e:
        print(f"✗ {args.command} failed: {e}", file=sys.stderr)
        print(error_record(e, 2), file=sys.stderr)
        return 2
    except Exception as e:
        print(f"✗ {args.command} failed: {e}", file=sys.stderr)
        print(error_record(e, 1), file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
