"""
Configuration Validator Module

Provides centralized validation logic for configuration values: seeds, output
formats, coherence times, grid sizes and iteration parameters.
"""

import math
from typing import Any

from hidden_qubit.config_constants import (
    CALIBRATION_SECTION,
    CONTROLLABILITY_SECTION,
    DEVICE_SECTION,
    MAX_SEED,
    OUTPUT_FORMATS,
    QVOLUME_SECTION,
    RUN_SECTION,
    TOMOGRAPHY_SECTION,
)
from hidden_qubit.exceptions import ValidationError


class ConfigValidator:
    """
    Centralized configuration validation with detailed error messages.

    Features:
    - Per-field range checks with the offending field named
    - Physical consistency checks (T2 ≤ 2·T1)
    - Section-level validation dispatch
    - Helpful error messages with suggestions
    """

    def validate_seed(self, seed: Any) -> int:
        """
        Validate a random seed.

        Args:
            seed: Seed value from configuration or command line

        Returns:
            Validated seed as int

        Raises:
            ValidationError: If seed is not an unsigned 64-bit integer
        """
        if isinstance(seed, bool) or not isinstance(seed, int):
            raise ValidationError(
                f"Seed must be an integer, got {seed!r}", field="seed"
            )
        if not 0 <= seed < MAX_SEED:
            raise ValidationError(
                f"Seed {seed} outside the unsigned 64-bit range", field="seed"
            )
        return seed

    def validate_format(self, fmt: str) -> str:
        """Validate an output format name."""
        if fmt not in OUTPUT_FORMATS:
            raise ValidationError(
                f"Invalid format '{fmt}'. Valid options: {', '.join(OUTPUT_FORMATS)}",
                field="format",
            )
        return fmt

    def validate_positive(self, name: str, value: Any) -> float:
        """
        Validate a strictly positive finite number.

        Raises:
            ValidationError: If value is not a positive finite number
        """
        if isinstance(value, bool) or not isinstance(value, int | float):
            raise ValidationError(f"'{name}' must be a number, got {value!r}", name)
        if not math.isfinite(value) or value <= 0:
            raise ValidationError(f"'{name}' must be positive, got {value}", name)
        return float(value)

    def validate_non_negative(self, name: str, value: Any) -> float:
        """Validate a finite number ≥ 0 (error probabilities, detunings)."""
        if isinstance(value, bool) or not isinstance(value, int | float):
            raise ValidationError(f"'{name}' must be a number, got {value!r}", name)
        if not math.isfinite(value) or value < 0:
            raise ValidationError(f"'{name}' must be non-negative, got {value}", name)
        return float(value)

    def validate_count(self, name: str, value: Any, minimum: int = 1) -> int:
        """Validate an integer count with a lower bound."""
        if isinstance(value, bool) or not isinstance(value, int):
            raise ValidationError(f"'{name}' must be an integer, got {value!r}", name)
        if value < minimum:
            raise ValidationError(f"'{name}' must be ≥ {minimum}, got {value}", name)
        return value

    def validate_coherence(self, qubit: str, t1: float, t2: float) -> None:
        """
        Validate coherence times of one qubit.

        Raises:
            ValidationError: If a time is not positive or T2 > 2·T1
        """
        self.validate_positive(f"t1_{qubit}", t1)
        self.validate_positive(f"t2_{qubit}", t2)
        if t2 > 2 * t1 * (1 + 1e-12):
            raise ValidationError(
                f"T2 of the {qubit} qubit ({t2:g} s) exceeds 2·T1 ({2 * t1:g} s); "
                f"pure dephasing rate would be negative",
                field=f"t2_{qubit}",
            )

    def validate_grid(self, k: Any, h: Any) -> tuple[int, int]:
        """Validate a (k, h) grid specification."""
        k = self.validate_count("k", k, minimum=1)
        h = self.validate_count("h", h, minimum=0)
        return k, h

    def validate_damping(self, value: Any) -> float:
        """Validate the self-consistent damping factor λ ∈ (0, 1]."""
        value = self.validate_positive("damping", value)
        if value > 1:
            raise ValidationError(
                f"'damping' must lie in (0, 1], got {value}", field="damping"
            )
        return value

    def validate_run_section(self, section: dict[str, Any]) -> None:
        self.validate_seed(section["seed"])
        self.validate_format(section["format"])
        self.validate_count("shots", section["shots"], minimum=0)

    def validate_device_section(self, section: dict[str, Any]) -> None:
        """Validate every physical parameter of the device section."""
        self.validate_coherence(
            "control", section["t1_control"], section["t2_control"]
        )
        self.validate_coherence("hidden", section["t1_hidden"], section["t2_hidden"])
        for name in (
            "g_iswap",
            "g_cphase",
            "single_qubit_duration",
            "iswap_duration",
            "cphase_duration",
        ):
            self.validate_positive(name, section[name])

    def validate_calibration_section(self, section: dict[str, Any]) -> None:
        self.validate_count("scan_points", section["scan_points"], minimum=7)
        self.validate_count("theta_points", section["theta_points"], minimum=12)
        self.validate_count("fit_points", section["fit_points"], minimum=3)
        self.validate_count("max_rounds", section["max_rounds"], minimum=1)
        window = self.validate_positive("scan_window", section["scan_window"])
        if window >= 1:
            raise ValidationError(
                f"'scan_window' must be below 1 (fraction of the estimate), got {window}",
                field="scan_window",
            )

    def validate_tomography_section(self, section: dict[str, Any]) -> None:
        self.validate_damping(section["damping"])
        self.validate_count("max_iterations", section["max_iterations"], minimum=1)
        self.validate_count("shots", section["shots"], minimum=0)

    def validate_qvolume_section(self, section: dict[str, Any]) -> None:
        """Validate grids, error rates and Monte-Carlo settings."""
        grids = section["grids"]
        if not isinstance(grids, list) or not grids:
            raise ValidationError("'grids' must be a non-empty list of [k, h]", "grids")
        for grid in grids:
            if not isinstance(grid, list | tuple) or len(grid) != 2:
                raise ValidationError(
                    f"Grid entry {grid!r} must be a [k, h] pair", field="grids"
                )
            self.validate_grid(grid[0], grid[1])
        for gamma_tau in section["gamma_taus"]:
            self.validate_non_negative("gamma_taus", gamma_tau)
        self.validate_non_negative("gamma_c_tau", section["gamma_c_tau"])
        self.validate_positive("epsilon", section["epsilon"])
        self.validate_count("samples", section["samples"], minimum=1)
        self.validate_grid(section["demo_k"], section["demo_h"])

    def validate_controllability_section(self, section: dict[str, Any]) -> None:
        self.validate_count("max_depth", section["max_depth"], minimum=1)

    def validate_section(self, name: str, section: dict[str, Any]) -> None:
        """
        Validate one configuration section by name.

        Raises:
            ValidationError: If any value in the section is invalid
        """
        validators = {
            RUN_SECTION: self.validate_run_section,
            DEVICE_SECTION: self.validate_device_section,
            CALIBRATION_SECTION: self.validate_calibration_section,
            TOMOGRAPHY_SECTION: self.validate_tomography_section,
            QVOLUME_SECTION: self.validate_qvolume_section,
            CONTROLLABILITY_SECTION: self.validate_controllability_section,
        }
        validator = validators.get(name)
        if validator is None:
            raise ValidationError(f"Unknown configuration section '{name}'", name)
        validator(section)
