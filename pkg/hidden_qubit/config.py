"""
Configuration Management Module

Provides TOML/JSON configuration management for hidden-qubit runs: device
ground truth, calibration scan settings, tomography and quantum-volume
parameters.
"""

import dataclasses
import json
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any, cast

import tomli_w

from hidden_qubit import config_constants as cc
from hidden_qubit.config_validator import ConfigValidator
from hidden_qubit.exceptions import ValidationError
from hidden_qubit.logger import get_logger


@dataclass
class RunConfig:
    """Run-wide settings shared by every subcommand."""

    seed: int = cc.DEFAULT_SEED
    format: str = cc.FORMAT_JSON
    out: str = ""
    shots: int = 0  # 0 = exact expectation values


@dataclass
class DeviceConfig:
    """Ground-truth parameters of the simulated control+hidden device."""

    t1_control: float = cc.DEFAULT_T1_CONTROL
    t2_control: float = cc.DEFAULT_T2_CONTROL
    t1_hidden: float = cc.DEFAULT_T1_HIDDEN
    t2_hidden: float = cc.DEFAULT_T2_HIDDEN
    g_iswap: float = cc.DEFAULT_G_ISWAP
    g_cphase: float = cc.DEFAULT_G_CPHASE
    gamma1: float = cc.DEFAULT_GAMMA1
    gamma2: float = cc.DEFAULT_GAMMA2
    beta: float = cc.DEFAULT_BETA
    gamma01: float = cc.DEFAULT_GAMMA01
    gamma10: float = cc.DEFAULT_GAMMA10
    gamma11: float = cc.DEFAULT_GAMMA11
    single_qubit_duration: float = cc.DEFAULT_SINGLE_QUBIT_DURATION
    iswap_duration: float = cc.DEFAULT_TWO_QUBIT_DURATION
    cphase_duration: float = cc.DEFAULT_TWO_QUBIT_DURATION
    noiseless: bool = False


@dataclass
class CalibrationConfig:
    """Scan densities and stopping rules for the tune-up protocol."""

    scan_points: int = cc.SCAN_POINTS
    scan_window: float = cc.SCAN_WINDOW
    theta_points: int = cc.THETA_POINTS
    fit_points: int = cc.QUADRATIC_FIT_POINTS
    max_rounds: int = cc.MAX_CALIBRATION_ROUNDS
    rel_tol: float = cc.CALIBRATION_REL_TOL


@dataclass
class TomographyConfig:
    """Self-consistent process tomography settings."""

    damping: float = cc.SC_LAMBDA
    max_iterations: int = cc.SC_MAX_ITER
    shots: int = 0


@dataclass
class QvolumeConfig:
    """Quantum-volume map settings."""

    grids: list[list[int]] = field(
        default_factory=lambda: [list(grid) for grid in cc.DEFAULT_QV_GRIDS]
    )
    gamma_taus: list[float] = field(
        default_factory=lambda: list(cc.GAMMA_TAU_PRESETS)
    )
    gamma_c_tau: float = cc.DIFFERENTIAL_GAMMA_C_TAU
    epsilon: float = cc.DEFAULT_EPSILON
    samples: int = cc.DEFAULT_QV_SAMPLES
    differential: bool = True
    demo_k: int = 2
    demo_h: int = 4


@dataclass
class ControllabilityConfig:
    """Reachability exploration settings."""

    max_depth: int = cc.DEFAULT_MAX_DEPTH
    gate_file: str = ""


@dataclass
class AppConfig:
    """Complete application configuration."""

    run: RunConfig = field(default_factory=RunConfig)
    device: DeviceConfig = field(default_factory=DeviceConfig)
    calibration: CalibrationConfig = field(default_factory=CalibrationConfig)
    tomography: TomographyConfig = field(default_factory=TomographyConfig)
    qvolume: QvolumeConfig = field(default_factory=QvolumeConfig)
    controllability: ControllabilityConfig = field(
        default_factory=ControllabilityConfig
    )


SECTION_CLASSES: dict[str, type] = {
    cc.RUN_SECTION: RunConfig,
    cc.DEVICE_SECTION: DeviceConfig,
    cc.CALIBRATION_SECTION: CalibrationConfig,
    cc.TOMOGRAPHY_SECTION: TomographyConfig,
    cc.QVOLUME_SECTION: QvolumeConfig,
    cc.CONTROLLABILITY_SECTION: ControllabilityConfig,
}


class ConfigManager:
    """
    Manages TOML and JSON configuration files for hidden-qubit runs.

    Features:
    - TOML (tomllib) or JSON input chosen by file extension
    - Missing sections and keys filled from defaults
    - Unknown keys dropped with a warning
    - Validation of every section before use
    - TOML export of the effective configuration
    """

    def __init__(self, config_file: str | Path | None = None):
        """Initialize configuration manager.

        Args:
            config_file: Path to a configuration file. If None, defaults are used.
        """
        self.config_file = Path(config_file) if config_file else None
        self._config: AppConfig | None = None
        self._validator = ConfigValidator()
        self.logger = get_logger()

    def _filter_config_fields(
        self, config_dict: dict[str, Any], config_class: type
    ) -> dict[str, Any]:
        """Filter config dictionary to only include valid fields for the given dataclass.

        Args:
            config_dict: Configuration dictionary from TOML or JSON
            config_class: Dataclass type to filter for

        Returns:
            Filtered dictionary containing only valid fields
        """
        valid_fields = {f.name for f in dataclasses.fields(config_class)}

        filtered = {}
        for key, value in config_dict.items():
            if key in valid_fields:
                filtered[key] = value
            else:
                self.logger.warning(
                    f"Ignoring unknown configuration field '{key}' in {config_class.__name__}",
                    "config",
                )

        return filtered

    def _get_default_config(self) -> dict[str, Any]:
        """Get default configuration structure."""
        return asdict(AppConfig())

    def _load_config_from_file(self) -> dict[str, Any]:
        """
        Load the raw configuration dictionary.

        Raises:
            ValidationError: If the file is missing or cannot be parsed
        """
        if self.config_file is None:
            return self._get_default_config()

        if not self.config_file.exists():
            raise ValidationError(
                f"Configuration file not found: {self.config_file}", field="config"
            )

        try:
            if self.config_file.suffix.lower() == ".json":
                with open(self.config_file, encoding="utf-8") as f:
                    data = json.load(f)
            else:
                with open(self.config_file, "rb") as f:
                    data = tomllib.load(f)
        except (json.JSONDecodeError, tomllib.TOMLDecodeError, UnicodeDecodeError) as e:
            raise ValidationError(
                f"Error parsing config file {self.config_file}: {e}", field="config"
            ) from e

        if not isinstance(data, dict):
            raise ValidationError(
                f"Config file {self.config_file} must contain a table at top level",
                field="config",
            )
        return data

    def _validate_config(self, config_dict: dict[str, Any]) -> dict[str, Any]:
        """Fill defaults for missing sections and keys, then validate every section."""
        default = self._get_default_config()

        for section in list(config_dict):
            if section not in default:
                self.logger.warning(
                    f"Ignoring unknown configuration section '{section}'", "config"
                )
                del config_dict[section]

        for section in cc.ALL_SECTIONS:
            if section not in config_dict:
                config_dict[section] = default[section]
            elif not isinstance(config_dict[section], dict):
                raise ValidationError(
                    f"Section '{section}' must be a table", field=section
                )
            else:
                for key, value in default[section].items():
                    config_dict[section].setdefault(key, value)

        for section in cc.ALL_SECTIONS:
            self._validator.validate_section(section, config_dict[section])

        return config_dict

    def load_config(self) -> AppConfig:
        """Load configuration from file (or defaults) and return AppConfig object."""
        config_dict = self._validate_config(self._load_config_from_file())

        sections = {
            name: cls(**self._filter_config_fields(config_dict[name], cls))
            for name, cls in SECTION_CLASSES.items()
        }
        self._config = AppConfig(**sections)
        return self._config

    def get_config(self) -> AppConfig:
        """Return the loaded configuration, loading it on first use."""
        if self._config is None:
            return self.load_config()
        return self._config

    def save_config(self, path: str | Path, config: AppConfig | None = None) -> Path:
        """
        Save a configuration as TOML.

        Args:
            path: Destination file
            config: Configuration to save (default: the loaded one)

        Returns:
            Path of the written file
        """

        def remove_none_values(obj):
            if isinstance(obj, dict):
                return {
                    k: remove_none_values(v) for k, v in obj.items() if v is not None
                }
            elif isinstance(obj, list):
                return [remove_none_values(item) for item in obj]
            else:
                return obj

        config = config or self.get_config()
        sanitized = cast(dict[str, Any], remove_none_values(asdict(config)))

        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "wb") as f:
            tomli_w.dump(sanitized, f)

        self.logger.info(f"Configuration written to {path}", "config", "config")
        return path
