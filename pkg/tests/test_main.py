"""Test command-line functionality."""

import json

import pytest

from hidden_qubit import reporting
from hidden_qubit.config import ConfigManager
from hidden_qubit.main import EXIT_INPUT_ERROR, EXIT_OK, build_parser, main


class TestParser:
    """Test cases for argument parsing."""

    def test_subcommands(self):
        """Test global options precede the subcommand."""
        args = build_parser().parse_args(["--seed", "3", "--format", "csv", "route-demo", "--k", "2"])
        assert args.command == "route-demo"
        assert args.seed == 3
        assert args.format == "csv"
        assert args.k == 2
        assert args.h is None

    def test_invalid_choices(self):
        """Test unknown formats and gates stop argument parsing."""
        with pytest.raises(SystemExit):
            build_parser().parse_args(["--format", "xml", "qpt"])
        with pytest.raises(SystemExit):
            build_parser().parse_args(["reachability", "--gates", "TOFFOLI"])
        with pytest.raises(SystemExit):
            build_parser().parse_args([])


class TestCommands:
    """Test cases for end-to-end commands."""

    @pytest.fixture(autouse=True)
    def _config_file(self, temp_config_dir, small_test_config):
        self.dir = temp_config_dir
        self.config = str(ConfigManager().save_config(temp_config_dir / "run.toml", small_test_config))

    def _run(self, *argv):
        return main(["--config", self.config, *argv])

    def test_init_config(self):
        """Test the default configuration is written as loadable TOML."""
        path = self.dir / "default.toml"
        assert main(["--out", str(path), "init-config"]) == EXIT_OK

        config = ConfigManager(path).load_config()
        assert config.qvolume.demo_h == 4

    def test_route_demo(self):
        """Test a routing plan is emitted for the configured grid."""
        out = self.dir / "plan.json"
        assert self._run("--out", str(out), "route-demo") == EXIT_OK

        data = json.loads(out.read_text(encoding="utf-8"))
        assert len(data["pairs"]) == 4
        assert data["n_s"] == len(data["layers"])

    def test_route_demo_csv(self):
        """Test the plan CSV parses back with the grid override."""
        out = self.dir / "plan.csv"
        assert self._run("--format", "csv", "--out", str(out), "route-demo", "--k", "2", "--h", "0") == EXIT_OK

        plan = reporting.parse_plan_csv(out.read_text(encoding="utf-8"))
        assert plan.n_s >= 1

    def test_reachability(self):
        """Test the reachability table for iSWAP plus cPHASE."""
        out = self.dir / "reach.csv"
        assert self._run("--format", "csv", "--out", str(out), "reachability") == EXIT_OK

        witnesses = reporting.parse_reachability_csv(out.read_text(encoding="utf-8"))
        assert "+IZ" in witnesses
        assert "+ZI" in witnesses

    def test_controllability_battery(self):
        """Test the claim battery exits cleanly."""
        out = self.dir / "claims.json"
        assert self._run("--out", str(out), "controllability") == EXIT_OK

        claims = reporting.parse_claims_json(out.read_text(encoding="utf-8"))
        assert all(claim.passed for claim in claims)

    def test_gate_file(self):
        """Test a gate file limits the run to its reachability report."""
        gate_file = self.dir / "gates.json"
        gate_file.write_text(json.dumps({"gates": ["RX_C", "RY_C", "CPHASE"]}), encoding="utf-8")
        out = self.dir / "report.json"

        assert self._run("--out", str(out), "controllability", "--gate-file", str(gate_file)) == EXIT_OK
        report = json.loads(out.read_text(encoding="utf-8"))
        assert "ZI" in report["reachable"]
        assert report["method"] == "clifford"

    def test_qv_map(self):
        """Test the quantum-volume table covers every configured grid."""
        out = self.dir / "qv.csv"
        assert self._run("--format", "csv", "--out", str(out), "qv-map", "--samples", "2") == EXIT_OK

        rows = reporting.parse_qv_table_csv(out.read_text(encoding="utf-8"))
        assert [(row.k, row.h) for row in rows] == [(2, 0), (2, 1)]


class TestExitCodes:
    """Test cases for input errors."""

    def test_malformed_gate_file(self, temp_config_dir):
        """Test a malformed gate file exits with an input error."""
        gate_file = temp_config_dir / "gates.json"
        gate_file.write_text("{not json", encoding="utf-8")
        assert main(["controllability", "--gate-file", str(gate_file)]) == EXIT_INPUT_ERROR

    def test_missing_config(self, temp_config_dir):
        """Test a missing configuration file exits with an input error."""
        missing = temp_config_dir / "absent.toml"
        assert main(["--config", str(missing), "route-demo"]) == EXIT_INPUT_ERROR

    def test_invalid_seed(self):
        """Test a negative seed exits with an input error."""
        assert main(["--seed", "-1", "route-demo"]) == EXIT_INPUT_ERROR

    def test_invalid_grid(self):
        """Test a zero grid side exits with an input error."""
        assert main(["route-demo", "--k", "0"]) == EXIT_INPUT_ERROR

    def test_invalid_samples(self):
        """Test a zero sample count exits with an input error."""
        assert main(["qv-map", "--samples", "0"]) == EXIT_INPUT_ERROR
