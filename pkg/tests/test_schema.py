"""Tests for schema validation."""

import pytest
from pydantic import ValidationError

from src.errors import ConfigError
from src.schema import EXAMPLE_IDS, QuadkitConfig, ToleranceSettings, load_config


def test_config_loads_successfully():
    """Test that the default config loads and validates."""
    config = load_config()
    assert config.version == "1.0"
    assert set(config.expected) == set(EXAMPLE_IDS)
    assert config.tolerances.absolute == pytest.approx(1e-9)


def test_expected_figures():
    """Spot-check the reproduced figures carried by the default config."""
    config = load_config()
    assert config.expected["A"].aux_count == 2
    assert config.expected["A"].coeff_range == (-13, 31)
    assert config.expected["C"].metrics_of == "printed"
    assert config.expected["C"].computed_range == (-9, 8)
    assert config.tolerances.singular_pivot == pytest.approx(1e-10)
    assert config.expected["D"].range_kind == "per_group"
    assert config.expected["E"].printed_magnitude_tolerance == pytest.approx(0.011)


def test_minimal_config_uses_defaults():
    """Only the version is required."""
    config = QuadkitConfig.model_validate({"version": "1.0"})
    assert config.budget_log2 == 28
    assert config.outputs.qubo_digits == 17
    assert config.expected == {}


def test_unknown_example_id_fails():
    """Expectations must name a built-in example."""
    with pytest.raises(ValidationError):
        QuadkitConfig.model_validate({"version": "1.0", "expected": {"Z": {}}})


@pytest.mark.parametrize("field", ["coeff_range", "computed_range", "baseline_range"])
def test_inverted_range_fails(field):
    """A range whose lower bound exceeds its upper bound is rejected."""
    raw = {"version": "1.0", "expected": {"A": {field: [31, -13]}}}
    with pytest.raises(ValidationError):
        QuadkitConfig.model_validate(raw)


def test_nonpositive_chain_length_fails():
    """Chain lengths count blocks and must be positive."""
    with pytest.raises(ValidationError):
        QuadkitConfig.model_validate({"version": "1.0", "chain_lengths": [2, 0]})


@pytest.mark.parametrize(
    "settings",
    [{"absolute": 0}, {"absolute": 1e-9, "epsilon": 1e-6}, {"relative": -1}],
)
def test_invalid_tolerances_fail(settings):
    """Tolerances must be positive and epsilon below the absolute tolerance."""
    with pytest.raises(ValidationError):
        ToleranceSettings.model_validate(settings)


def test_load_config_missing_file(tmp_path):
    """A missing config file raises FileNotFoundError."""
    with pytest.raises(FileNotFoundError):
        load_config(tmp_path / "absent.yml")


def test_load_config_wraps_validation_errors(tmp_path):
    """Invalid files surface as ConfigError with exit code 2."""
    path = tmp_path / "bad.yml"
    path.write_text("version: '1.0'\nbudget_log2: 0\n")
    with pytest.raises(ConfigError) as exc_info:
        load_config(path)
    assert exc_info.value.exit_code == 2
    assert "bad.yml" in str(exc_info.value)
