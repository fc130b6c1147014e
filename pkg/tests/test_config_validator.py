"""Test configuration validator functionality."""

import math
from dataclasses import asdict

import pytest

from hidden_qubit.config import AppConfig
from hidden_qubit.config_validator import ConfigValidator
from hidden_qubit.exceptions import ValidationError


class TestConfigValidator:
    """Test cases for configuration validation."""

    def setup_method(self):
        """Set up test environment."""
        self.validator = ConfigValidator()
        self.defaults = asdict(AppConfig())

    def test_valid_seeds(self):
        """Test validation of valid seeds."""
        for seed in (0, 1, 20240501, 2**64 - 1):
            assert self.validator.validate_seed(seed) == seed

    def test_invalid_seeds(self):
        """Test validation of invalid seeds."""
        for seed in (-1, 2**64, 1.5, "7", True):
            with pytest.raises(ValidationError) as exc_info:
                self.validator.validate_seed(seed)
            assert exc_info.value.field == "seed"

    def test_formats(self):
        """Test output format validation."""
        assert self.validator.validate_format("csv") == "csv"
        assert self.validator.validate_format("json") == "json"
        with pytest.raises(ValidationError) as exc_info:
            self.validator.validate_format("xml")
        assert "Valid options" in str(exc_info.value)

    def test_positive_numbers(self):
        """Test positive number validation."""
        assert self.validator.validate_positive("epsilon", 2) == 2.0
        for value in (0, -1.0, math.inf, math.nan, "1", False):
            with pytest.raises(ValidationError) as exc_info:
                self.validator.validate_positive("epsilon", value)
            assert exc_info.value.field == "epsilon"

    def test_non_negative_numbers(self):
        """Test non-negative validation accepts zero."""
        assert self.validator.validate_non_negative("gamma_tau", 0) == 0.0
        with pytest.raises(ValidationError):
            self.validator.validate_non_negative("gamma_tau", -1e-9)

    def test_counts(self):
        """Test integer count validation with minimum."""
        assert self.validator.validate_count("samples", 5) == 5
        assert self.validator.validate_count("shots", 0, minimum=0) == 0
        for value in (0, 2.0, True):
            with pytest.raises(ValidationError):
                self.validator.validate_count("samples", value)

    def test_coherence(self):
        """Test T2 ≤ 2·T1 is enforced."""
        self.validator.validate_coherence("control", 30e-6, 60e-6)
        with pytest.raises(ValidationError) as exc_info:
            self.validator.validate_coherence("hidden", 30e-6, 61e-6)
        assert exc_info.value.field == "t2_hidden"
        assert "exceeds 2·T1" in str(exc_info.value)

    def test_grid(self):
        """Test grid validation."""
        assert self.validator.validate_grid(3, 0) == (3, 0)
        with pytest.raises(ValidationError):
            self.validator.validate_grid(0, 1)
        with pytest.raises(ValidationError):
            self.validator.validate_grid(2, -1)

    def test_damping(self):
        """Test damping must lie in (0, 1]."""
        assert self.validator.validate_damping(1) == 1.0
        assert self.validator.validate_damping(0.1) == 0.1
        for value in (0, 1.5, -0.2):
            with pytest.raises(ValidationError):
                self.validator.validate_damping(value)

    def test_default_sections_valid(self):
        """Test every default section passes validation."""
        for name, section in self.defaults.items():
            self.validator.validate_section(name, section)

    def test_unknown_section(self):
        """Test dispatch rejects unknown sections."""
        with pytest.raises(ValidationError) as exc_info:
            self.validator.validate_section("plotting", {})
        assert "Unknown configuration section" in str(exc_info.value)

    def test_malformed_grid_entries(self):
        """Test qvolume grids must be [k, h] pairs."""
        section = dict(self.defaults["qvolume"])
        for grids in ([], [[2]], [[2, 1, 0]], [[0, 1]], "2x1"):
            section["grids"] = grids
            with pytest.raises(ValidationError):
                self.validator.validate_qvolume_section(section)

    def test_scan_window_below_one(self):
        """Test calibration scan window must be a fraction."""
        section = dict(self.defaults["calibration"])
        section["scan_window"] = 1.0
        with pytest.raises(ValidationError) as exc_info:
            self.validator.validate_calibration_section(section)
        assert exc_info.value.field == "scan_window"
