"""
Logger Utility Module

Console and file logging for long numerical runs. Diagnostics go to stderr so
that tables written to stdout stay machine readable; every line can carry the
time elapsed since the logger was created, which is what matters when a
tune-up or a quantum-volume sweep runs for minutes.
"""

import sys
import time
from datetime import datetime
from enum import IntEnum
from pathlib import Path
from typing import TextIO


class LogLevel(IntEnum):
    DEBUG = 1
    INFO = 2
    WARNING = 3
    ERROR = 4
    CRITICAL = 5


class Logger:
    """
    Leveled logger writing one line per message.

    Line layout: ``[+elapsed] icon [CATEGORY] LEVEL: message``, where the
    elapsed stamp is optional, the category label can be switched off and
    the level tag only appears from WARNING upwards. With ``log_file`` set,
    every line is also appended to that file with a wall-clock stamp.
    """

    ICONS = {
        "success": "✓",
        "error": "❌",
        "warning": "⚠️",
        "info": "ℹ️",
        "debug": "🐛",
        "calibration": "🎛️",
        "scan": "📈",
        "tomography": "🔬",
        "volume": "📦",
        "claim": "📜",
        "config": "⚙️",
    }
    DEFAULT_ICONS = {
        LogLevel.DEBUG: "debug",
        LogLevel.INFO: "info",
        LogLevel.WARNING: "warning",
        LogLevel.ERROR: "error",
        LogLevel.CRITICAL: "error",
    }

    def __init__(
        self,
        min_level: LogLevel = LogLevel.INFO,
        output_stream: TextIO | None = None,
        log_file: Path | None = None,
        include_timestamps: bool = False,
        include_categories: bool = True,
    ):
        self.min_level = min_level
        self.output_stream = output_stream or sys.stderr
        self.log_file = log_file
        self.include_timestamps = include_timestamps
        self.include_categories = include_categories
        self._started = time.perf_counter()

        if self.log_file:
            self.log_file.parent.mkdir(parents=True, exist_ok=True)

    def elapsed(self) -> float:
        """Seconds since the logger was created."""
        return time.perf_counter() - self._started

    def format_line(
        self, level: LogLevel, message: str, category: str | None, icon: str | None
    ) -> str:
        parts = []
        if self.include_timestamps:
            parts.append(f"[+{self.elapsed():.1f}s]")
        if icon:
            parts.append(self.ICONS.get(icon, icon))
        if self.include_categories and category:
            parts.append(f"[{category.upper()}]")
        if level >= LogLevel.WARNING:
            parts.append(f"{level.name}:")
        parts.append(message)
        return " ".join(parts)

    def log(
        self,
        level: LogLevel,
        message: str,
        category: str | None = None,
        icon: str | None = None,
    ) -> None:
        """
        Write one message if its level passes the filter.

        Args:
            level: Severity
            message: Text to write
            category: Subsystem label such as "calibration" or "routing"
            icon: Key into ICONS or a literal symbol; defaults per level
        """
        if level < self.min_level:
            return
        line = self.format_line(level, message, category, icon or self.DEFAULT_ICONS[level])
        print(line, file=self.output_stream)
        if self.log_file:
            try:
                with self.log_file.open("a", encoding="utf-8") as handle:
                    handle.write(f"{datetime.now().isoformat(timespec='seconds')} {line}\n")
            except OSError as e:
                print(f"Log file {self.log_file} not writable: {e}", file=self.output_stream)
                self.log_file = None

    def debug(self, message: str, category: str | None = None, icon: str | None = None) -> None:
        self.log(LogLevel.DEBUG, message, category, icon)

    def info(self, message: str, category: str | None = None, icon: str | None = None) -> None:
        self.log(LogLevel.INFO, message, category, icon)

    def warning(self, message: str, category: str | None = None, icon: str | None = None) -> None:
        self.log(LogLevel.WARNING, message, category, icon)

    def error(self, message: str, category: str | None = None, icon: str | None = None) -> None:
        self.log(LogLevel.ERROR, message, category, icon)

    def critical(self, message: str, category: str | None = None, icon: str | None = None) -> None:
        self.log(LogLevel.CRITICAL, message, category, icon)

    def success(self, message: str, category: str | None = None) -> None:
        self.log(LogLevel.INFO, message, category, "success")

    # Domain helpers

    def calibration_step(self, step: str) -> None:
        self.info(f"Calibrating {step}...", "calibration", "calibration")

    def scan_completed(self, step: str, parameter: str, value: float) -> None:
        self.debug(f"{step}: {parameter} = {value:.6g}", "calibration", "scan")

    def tuneup_completed(self, summary: str) -> None:
        self.success(f"Tune-up completed ({summary})", "calibration")

    def qpt_iteration(self, index: int, residual: float) -> None:
        self.debug(f"Iteration {index}: residual {residual:.4e}", "tomography", "tomography")

    def claim_result(self, name: str, passed: bool, detail: str = "") -> None:
        """Verified claims at INFO, failed ones at ERROR."""
        message = f"{name}: {'verified' if passed else 'FAILED'}"
        if detail:
            message += f" ({detail})"
        if passed:
            self.info(message, "controllability", "claim")
        else:
            self.error(message, "controllability")

    def qv_point(self, k: int, h: int, gamma_tau: float, log2_vq: float) -> None:
        self.debug(f"k={k} h={h} Γτ={gamma_tau:g}: log2 V_Q = {log2_vq:.3f}", "volume", "volume")


_global_logger: Logger | None = None


def get_logger() -> Logger:
    """Return the process-wide logger, creating a default one on first use."""
    global _global_logger
    if _global_logger is None:
        _global_logger = Logger()
    return _global_logger


def setup_logger(
    min_level: LogLevel = LogLevel.INFO,
    output_stream: TextIO | None = None,
    log_file: Path | None = None,
    include_timestamps: bool = False,
    include_categories: bool = True,
) -> Logger:
    """Replace the process-wide logger; arguments as for ``Logger``."""
    global _global_logger
    _global_logger = Logger(
        min_level, output_stream, log_file, include_timestamps, include_categories
    )
    return _global_logger
