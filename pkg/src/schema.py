"""Pydantic schema validation for quadkit.yml."""

import os
from pathlib import Path
from typing import Literal

import yaml
from pydantic import BaseModel, Field, ValidationError, model_validator

from src.errors import ConfigError

EXAMPLE_IDS = ("A", "B", "C", "D", "E")
THREADS_ENV = "QUADKIT_THREADS"


class ToleranceSettings(BaseModel):
    """Numerical tolerances."""

    absolute: float = Field(default=1e-9, gt=0)
    relative: float = Field(default=1e-9, ge=0)
    epsilon: float = Field(default=1e-12, ge=0)
    singular_pivot: float = Field(default=1e-10, gt=0)

    @model_validator(mode="after")
    def validate_epsilon_below_tolerance(self) -> "ToleranceSettings":
        if self.epsilon >= self.absolute:
            raise ValueError(
                f"epsilon ({self.epsilon}) must be smaller than "
                f"the absolute tolerance ({self.absolute})"
            )
        return self


class OutputSettings(BaseModel):
    """Formatting of written results."""

    decimals: int = Field(default=2, ge=0, le=12)
    qubo_digits: int = Field(default=17, ge=1, le=17)


class ExpectedExample(BaseModel):
    """Published figures one built-in example must reproduce.

    ``metrics_of`` selects whether term counts and ranges are measured on the
    computed quadratization or on the transcribed published one; ``range_kind``
    whether the range is taken after merging or per gadget. ``computed_range``
    records the merged range of our own result when the figures are printed ones.
    """

    aux_count: int | None = Field(default=None, ge=0)
    metrics_of: Literal["computed", "printed"] = "computed"
    group_quadratic_terms: int | None = Field(default=None, ge=0)
    coeff_range: tuple[float, float] | None = None
    computed_range: tuple[float, float] | None = None
    range_kind: Literal["merged", "per_group"] = "merged"
    printed_magnitude_tolerance: float | None = Field(default=None, gt=0)
    baseline_aux: int | None = Field(default=None, ge=0)
    baseline_penalties: list[float] = Field(default_factory=list)
    baseline_quadratic_terms: int | None = Field(default=None, ge=0)
    baseline_range: tuple[float, float] | None = None
    range_tolerance: float = Field(default=1e-6, ge=0)

    @model_validator(mode="after")
    def validate_ranges(self) -> "ExpectedExample":
        for name in ("coeff_range", "computed_range", "baseline_range"):
            bounds = getattr(self, name)
            if bounds is not None and bounds[0] > bounds[1]:
                raise ValueError(f"{name} lower bound exceeds upper bound: {bounds}")
        return self


class QuadkitConfig(BaseModel):
    """Full settings schema."""

    version: str
    tolerances: ToleranceSettings = Field(default_factory=ToleranceSettings)
    budget_log2: int = Field(default=28, ge=1, le=40)
    seed: int = 0
    outputs: OutputSettings = Field(default_factory=OutputSettings)
    chain_lengths: list[int] = Field(default_factory=lambda: [1, 2, 3])
    expected: dict[str, ExpectedExample] = Field(default_factory=dict)

    @model_validator(mode="after")
    def validate_expected_ids(self) -> "QuadkitConfig":
        for key in self.expected:
            if key not in EXAMPLE_IDS:
                raise ValueError(f"expected: unknown example id {key!r}, use one of {EXAMPLE_IDS}")
        return self

    @model_validator(mode="after")
    def validate_chain_lengths(self) -> "QuadkitConfig":
        if any(n < 1 for n in self.chain_lengths):
            raise ValueError(f"chain_lengths must be positive: {self.chain_lengths}")
        return self


def load_config(config_path: Path | None = None) -> QuadkitConfig:
    """Load and validate the settings file.

    Args:
        config_path: Path to config file. Defaults to config/quadkit.yml

    Returns:
        Validated QuadkitConfig model

    Raises:
        FileNotFoundError: If config file doesn't exist
        ConfigError: If config fails validation
    """
    if config_path is None:
        config_path = Path("config/quadkit.yml")

    if not config_path.exists():
        raise FileNotFoundError(f"Config file not found: {config_path}")

    with open(config_path) as f:
        raw = yaml.safe_load(f)

    try:
        return QuadkitConfig.model_validate(raw)
    except ValidationError as e:
        raise ConfigError(f"{config_path}: {e}") from e


def thread_limit() -> int:
    """Worker threads allowed by QUADKIT_THREADS (default: CPU count).

    Raises:
        ConfigError: If the variable is set but not a positive integer
    """
    raw = os.environ.get(THREADS_ENV)
    if raw is None or raw.strip() == "":
        return os.cpu_count() or 1
    try:
        value = int(raw)
    except ValueError:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}") from None
    if value < 1:
        raise ConfigError(f"{THREADS_ENV} must be a positive integer, got {raw!r}")
    return value


def validate() -> None:
    """Validate the default config file. For CLI usage."""
    config = load_config()
    print(f"✓ Config valid: {len(config.expected)} example expectations")


if __name__ == "__main__":
    validate()
