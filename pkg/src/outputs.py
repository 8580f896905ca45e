"""Output generation: polynomial and QUBO files, reports, manifest."""

import hashlib
import json
import os
import sys
import tempfile
from datetime import datetime, timezone
from pathlib import Path

import pandas as pd

from src.baselines import ComparisonMetrics
from src.polynomial import Polynomial
from src.quad4 import Quadratization

UTC = timezone.utc

QUBO_DIGITS = 17


def atomic_write_text(path: Path, content: str) -> None:
    """Write ``content`` to a temp file in the target directory, then rename it over ``path``."""
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as f:
            f.write(content)
        os.replace(tmp, path)
    except BaseException:
        Path(tmp).unlink(missing_ok=True)
        raise


def format_polynomial(p: Polynomial) -> str:
    """Polynomial file text: one ``coefficient : indices`` line per term, 1-based.

    Coefficients use ``repr`` so parsing the text back is exact.
    """
    lines = []
    for mon, coeff in p.items():
        indices = " ".join(str(v + 1) for v in mon)
        lines.append(f"{coeff!r} : {indices}".rstrip())
    return "\n".join(lines) + "\n"


def qubo_numbering(q: Quadratization, n: int) -> dict[int, int]:
    """Map library variables to QUBO positions: originals keep theirs, aux go to n, n+1, ..."""
    stray = [v for v in q.originals() if v >= n]
    if stray:
        raise ValueError(f"original variables {stray} do not fit in n = {n}")
    numbering = {v: v for v in range(n)}
    numbering.update({a: n + k for k, a in enumerate(q.aux_vars)})
    return numbering


def format_qubo(q: Quadratization, n: int, digits: int = QUBO_DIGITS) -> str:
    """QUBO text: header ``n m c0`` then ``i j coeff`` (1-based, i <= j, linear as i = j)."""
    numbering = qubo_numbering(q, n)
    constant = q.quadratic.coefficient(())
    entries = []
    for mon, coeff in q.quadratic.items():
        if not mon:
            continue
        positions = sorted(numbering[v] for v in mon)
        entries.append((positions[0], positions[-1], coeff))
    lines = [f"{n} {len(q.aux_vars)} {constant:.{digits}g}"]
    lines += [f"{i + 1} {j + 1} {coeff:.{digits}g}" for i, j, coeff in sorted(entries)]
    return "\n".join(lines) + "\n"


def report_fields(
    q: Quadratization,
    metrics: ComparisonMetrics,
    method: str,
    n: int,
) -> dict[str, object]:
    """Flat key/value description of a quadratization and its provenance."""
    numbering = qubo_numbering(q, n)
    fields: dict[str, object] = {
        "method": method,
        "n": n,
        "m": len(q.aux_vars),
        "aux_count": metrics.aux_count,
        "new_quadratic_terms": metrics.new_quadratic_terms,
        "group_quadratic_terms": metrics.group_quadratic_terms,
        "coeff_min": metrics.coeff_min,
        "coeff_max": metrics.coeff_max,
        "fallback_groups": q.fallback_count,
    }
    for k, record in enumerate(q.provenance, start=1):
        prefix = f"group.{k}"
        fields[f"{prefix}.support"] = " ".join(str(v + 1) for v in record.support)
        fields[f"{prefix}.method"] = record.method
        if record.aux is not None:
            fields[f"{prefix}.aux"] = numbering[record.aux] + 1
        if record.plan is not None:
            plan = record.plan
            fields[f"{prefix}.lemma"] = str(plan.lemma)
            fields[f"{prefix}.case"] = plan.case_row
            fields[f"{prefix}.flips"] = " ".join(str(b) for b in sorted(plan.effective_flips))
            if plan.permutation is not None:
                fields[f"{prefix}.permutation"] = " ".join(str(b) for b in plan.permutation)
        if record.penalty is not None:
            fields[f"{prefix}.penalty"] = record.penalty
    return fields


def format_report(fields: dict[str, object]) -> str:
    """``key = value`` lines in insertion order."""
    return "".join(f"{key} = {value}\n" for key, value in fields.items())


def write_json(data: dict, path: Path) -> None:
    """Structured companion of the key/value report."""
    atomic_write_text(path, json.dumps(data, indent=2, ensure_ascii=False) + "\n")


def format_metrics_table(df: pd.DataFrame, decimals: int = 2) -> str:
    """Human-readable metrics table rounded to ``decimals``."""
    return df.round(decimals).to_string(index=False)


def write_metrics_table(df: pd.DataFrame, path: Path) -> None:
    atomic_write_text(path, df.to_csv(index=False))


def compute_file_hash(path: Path) -> str:
    """Compute SHA-256 hash of a file."""
    sha256 = hashlib.sha256()
    with open(path, "rb") as f:
        for chunk in iter(lambda: f.read(8192), b""):
            sha256.update(chunk)
    return sha256.hexdigest()


def write_manifest(
    config_path: Path | None,
    input_path: Path | None,
    command: str,
    seed: int,
    output_dir: Path,
) -> None:
    """Write manifest.json with reproducibility metadata."""
    import numpy
    import pandas
    import pydantic
    import yaml

    manifest = {
        "input_hash": compute_file_hash(input_path) if input_path else None,
        "config_hash": compute_file_hash(config_path) if config_path else None,
        "python_version": sys.version,
        "library_versions": {
            "numpy": numpy.__version__,
            "pandas": pandas.__version__,
            "pydantic": pydantic.__version__,
            "pyyaml": yaml.__version__,
        },
        "command": command,
        "seed": seed,
        "timestamp_utc": datetime.now(UTC).isoformat(),
    }
    write_json(manifest, output_dir / "manifest.json")
