"""
Exceptions Module

Custom exceptions for simulation, calibration, tomography and routing.
Provides specific error types for better error handling and exit codes.
"""

from typing import Any


class HiddenQubitError(Exception):
    """Base exception for all toolkit errors."""

    def __init__(self, message: str, context: dict[str, Any] | None = None):
        """
        Initialize toolkit error.

        Args:
            message: Error message
            context: Optional diagnostic values (scan data, residuals, ...)
        """
        super().__init__(message)
        self.context = context
        self.message = message


class ValidationError(HiddenQubitError, ValueError):
    """Raised when an input value, matrix or configuration entry is invalid."""

    def __init__(self, message: str, field: str | None = None):
        """
        Initialize validation error.

        Args:
            message: Error message
            field: Optional name of the offending field
        """
        super().__init__(message)
        self.field = field


class ConvergenceError(HiddenQubitError):
    """Raised when an iterative routine exhausts its iteration budget."""

    def __init__(self, routine: str, iterations: int, residual: float):
        message = (
            f"{routine} did not converge after {iterations} iterations "
            f"(residual {residual:.3e})"
        )
        super().__init__(message, {"residual": residual})
        self.routine = routine
        self.iterations = iterations
        self.residual = residual


class ScanWindowError(HiddenQubitError):
    """Raised when a calibration scan has no interior extremum."""

    def __init__(self, step: str, parameter: str, window: tuple[float, float]):
        """
        Initialize scan window error.

        Args:
            step: Calibration step name (e.g. "iswap-length")
            parameter: Scanned parameter
            window: (low, high) bounds of the scan
        """
        message = (
            f"Scan '{step}' found no interior extremum of {parameter} "
            f"in [{window[0]:.6g}, {window[1]:.6g}]"
        )
        super().__init__(message)
        self.step = step
        self.parameter = parameter
        self.window = window


class FitQualityError(HiddenQubitError):
    """Raised when a fit metric is outside its acceptance threshold."""

    def __init__(
        self,
        step: str,
        metric: float,
        threshold: float,
        scan: dict[str, list[float]] | None = None,
    ):
        """
        Initialize fit quality error.

        Args:
            step: Calibration step name
            metric: Observed fit metric (R² or residual)
            threshold: Acceptance threshold that was violated
            scan: Optional scan dump for diagnosis
        """
        message = (
            f"Fit for '{step}' rejected: metric {metric:.4g} "
            f"violates threshold {threshold:.4g}"
        )
        super().__init__(message, scan)
        self.step = step
        self.metric = metric
        self.threshold = threshold
        self.scan = scan


class PreconditionError(HiddenQubitError):
    """Raised when a tune-up step runs before the steps it depends on."""

    def __init__(self, step: str, missing: list[str]):
        message = f"Cannot run '{step}' before: {', '.join(missing)}"
        super().__init__(message)
        self.step = step
        self.missing = missing


class InstabilityError(HiddenQubitError):
    """Raised when the self-consistent iteration diverges from the start."""

    def __init__(self, r0: float, r1: float):
        message = (
            f"Self-consistent iteration unstable: residual grew from "
            f"{r0:.3e} to {r1:.3e} in the first step"
        )
        super().__init__(message, {"r0": r0, "r1": r1})
        self.r0 = r0
        self.r1 = r1


class ColoringBoundError(HiddenQubitError):
    """Raised when pair grouping uses more groups than the Shannon bound allows."""

    def __init__(self, groups: int, bound: int):
        message = f"Pair grouping produced {groups} groups, bound is {bound}"
        super().__init__(message)
        self.groups = groups
        self.bound = bound
