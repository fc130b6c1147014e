"""Test configuration management functionality."""

import json
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib

import pytest

from hidden_qubit import config_constants as cc
from hidden_qubit.config import AppConfig, ConfigManager
from hidden_qubit.exceptions import ValidationError


class TestConfigManager:
    """Test cases for TOML and JSON configuration loading."""

    def test_defaults_without_file(self):
        """Test that no file yields the default configuration."""
        config = ConfigManager().load_config()

        assert config == AppConfig()
        assert config.run.seed == cc.DEFAULT_SEED
        assert config.qvolume.gamma_taus == list(cc.GAMMA_TAU_PRESETS)
        assert config.tomography.damping == cc.SC_LAMBDA

    def test_partial_toml_filled_from_defaults(self, temp_config_dir):
        """Test missing keys and sections come from defaults."""
        path = temp_config_dir / "run.toml"
        path.write_text(
            "[run]\nseed = 11\n\n[qvolume]\ngrids = [[3, 1]]\nsamples = 10\n",
            encoding="utf-8",
        )

        config = ConfigManager(path).load_config()

        assert config.run.seed == 11
        assert config.run.format == cc.FORMAT_JSON
        assert config.qvolume.grids == [[3, 1]]
        assert config.qvolume.samples == 10
        assert config.device.t1_hidden == cc.DEFAULT_T1_HIDDEN

    def test_json_config(self, temp_config_dir):
        """Test JSON files are accepted by extension."""
        path = temp_config_dir / "run.json"
        path.write_text(json.dumps({"device": {"noiseless": True}}), encoding="utf-8")

        config = ConfigManager(path).load_config()

        assert config.device.noiseless is True

    def test_unknown_keys_dropped_with_warning(self, temp_config_dir, quiet_logger):
        """Test unknown sections and fields are ignored."""
        path = temp_config_dir / "run.toml"
        path.write_text(
            "[run]\nseed = 3\nvolume = 11\n\n[plotting]\ndpi = 1\n", encoding="utf-8"
        )

        config = ConfigManager(path).load_config()

        assert config.run.seed == 3
        output = quiet_logger.getvalue()
        assert "unknown configuration field 'volume'" in output
        assert "unknown configuration section 'plotting'" in output

    def test_missing_file(self, temp_config_dir):
        """Test a missing file raises ValidationError."""
        with pytest.raises(ValidationError) as exc_info:
            ConfigManager(temp_config_dir / "absent.toml").load_config()
        assert "not found" in str(exc_info.value)

    def test_malformed_toml(self, temp_config_dir):
        """Test parse errors raise ValidationError."""
        path = temp_config_dir / "bad.toml"
        path.write_text("[run\nseed = ", encoding="utf-8")

        with pytest.raises(ValidationError) as exc_info:
            ConfigManager(path).load_config()
        assert exc_info.value.field == "config"

    def test_section_must_be_table(self, temp_config_dir):
        """Test a scalar in place of a section is rejected."""
        path = temp_config_dir / "bad.toml"
        path.write_text('run = "fast"\n', encoding="utf-8")

        with pytest.raises(ValidationError):
            ConfigManager(path).load_config()

    def test_invalid_values_rejected(self, temp_config_dir):
        """Test section validation runs on loaded values."""
        path = temp_config_dir / "bad.toml"
        path.write_text("[tomography]\ndamping = 2.0\n", encoding="utf-8")

        with pytest.raises(ValidationError) as exc_info:
            ConfigManager(path).load_config()
        assert exc_info.value.field == "damping"

    def test_get_config_caches(self):
        """Test get_config loads once."""
        manager = ConfigManager()
        assert manager.get_config() is manager.get_config()

    def test_save_and_reload(self, temp_config_dir):
        """Test saved TOML reloads to the same configuration."""
        manager = ConfigManager()
        config = manager.load_config()
        config.run.seed = 99
        config.qvolume.grids = [[2, 2], [4, 0]]

        path = manager.save_config(temp_config_dir / "nested" / "out.toml", config)

        with open(path, "rb") as f:
            assert tomllib.load(f)["run"]["seed"] == 99
        assert ConfigManager(path).load_config() == config
