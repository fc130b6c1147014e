"""Test logger functionality."""

import io
import re

from hidden_qubit.logger import Logger, LogLevel, get_logger, setup_logger


class TestLogger:
    """Test cases for the leveled logger."""

    def setup_method(self):
        """Set up test environment."""
        self.stream = io.StringIO()
        self.logger = Logger(min_level=LogLevel.DEBUG, output_stream=self.stream)

    def lines(self) -> list[str]:
        return self.stream.getvalue().splitlines()

    def test_level_tags(self):
        """Test only warnings and above carry a level tag."""
        self.logger.debug("fine detail")
        self.logger.info("progress")
        self.logger.warning("window edge")
        self.logger.critical("gave up")

        debug, info, warning, critical = self.lines()
        assert debug == "🐛 fine detail"
        assert info == "ℹ️ progress"
        assert warning == "⚠️ WARNING: window edge"
        assert critical == "❌ CRITICAL: gave up"

    def test_filtering(self):
        """Test messages below the minimum level are dropped."""
        logger = Logger(min_level=LogLevel.WARNING, output_stream=self.stream)
        logger.info("dropped")
        logger.error("kept")

        assert self.lines() == ["❌ ERROR: kept"]

    def test_category_and_icon(self):
        """Test category labels and icon lookup."""
        self.logger.info("Configuration written", "config", "config")
        self.logger.info("literal icon", None, "*")

        assert self.lines() == ["⚙️ [CONFIG] Configuration written", "* literal icon"]

    def test_categories_disabled(self):
        """Test category labels can be switched off."""
        logger = Logger(output_stream=self.stream, include_categories=False)
        logger.warning("ignored key", "config")

        assert "[CONFIG]" not in self.stream.getvalue()

    def test_elapsed_stamp(self):
        """Test the optional elapsed-time prefix."""
        logger = Logger(output_stream=self.stream, include_timestamps=True)
        logger.info("stamped")

        assert re.match(r"^\[\+\d+\.\ds\] ", self.stream.getvalue())
        assert logger.elapsed() >= 0.0

    def test_claim_result(self):
        """Test verified claims log at INFO and failures at ERROR."""
        self.logger.claim_result("hidden + SWAP-type", True, "dim 15")
        self.logger.claim_result("hidden + cPHASE-type", False)

        passed, failed = self.lines()
        assert passed == "📜 [CONTROLLABILITY] hidden + SWAP-type: verified (dim 15)"
        assert failed == "❌ [CONTROLLABILITY] ERROR: hidden + cPHASE-type: FAILED"

    def test_domain_helpers(self):
        """Test calibration, tomography and volume helpers."""
        self.logger.calibration_step("iswap-length")
        self.logger.scan_completed("iswap-length", "length", 1.923e-7)
        self.logger.tuneup_completed("5 steps")
        self.logger.qpt_iteration(3, 1.5e-3)
        self.logger.qv_point(4, 2, 4e-4, 5.25)

        output = self.stream.getvalue()
        assert "Calibrating iswap-length..." in output
        assert "iswap-length: length = 1.923e-07" in output
        assert "✓ [CALIBRATION] Tune-up completed (5 steps)" in output
        assert "Iteration 3: residual 1.5000e-03" in output
        assert "k=4 h=2 Γτ=0.0004: log2 V_Q = 5.250" in output

    def test_debug_helpers_hidden_at_info(self):
        """Test per-iteration helpers are silent at INFO."""
        logger = Logger(output_stream=self.stream)
        logger.qpt_iteration(1, 0.1)
        logger.qv_point(2, 0, 4e-3, 1.0)

        assert self.stream.getvalue() == ""

    def test_log_file(self, temp_config_dir):
        """Test lines are mirrored to the log file with a date stamp."""
        log_file = temp_config_dir / "logs" / "run.log"
        logger = Logger(output_stream=self.stream, log_file=log_file)
        logger.info("To file", "tomography")

        content = log_file.read_text(encoding="utf-8")
        assert content.endswith("ℹ️ [TOMOGRAPHY] To file\n")
        assert re.match(r"^\d{4}-\d\d-\d\dT\d\d:\d\d:\d\d ", content)

    def test_unwritable_log_file(self, temp_config_dir):
        """Test a log file that cannot be opened is reported once and dropped."""
        log_file = temp_config_dir / "logs"
        log_file.mkdir()
        logger = Logger(output_stream=self.stream, log_file=log_file)
        logger.info("first")
        logger.info("second")

        assert logger.log_file is None
        assert self.stream.getvalue().count("not writable") == 1
        assert "second" in self.stream.getvalue()


class TestGlobalLogger:
    """Test cases for the process-wide logger."""

    def test_setup_logger_replaces_global(self):
        """Test setup_logger installs the returned instance."""
        stream = io.StringIO()
        logger = setup_logger(min_level=LogLevel.ERROR, output_stream=stream)

        assert get_logger() is logger
        get_logger().warning("ignored")
        assert stream.getvalue() == ""

    def test_levels_are_ordered(self):
        """Test levels compare by severity."""
        assert LogLevel.DEBUG < LogLevel.INFO < LogLevel.WARNING < LogLevel.CRITICAL
