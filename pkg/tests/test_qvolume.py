"""Test quantum volume functionality."""

import math

import pytest

from hidden_qubit.config import QvolumeConfig
from hidden_qubit.exceptions import ValidationError
from hidden_qubit.qvolume import (
    QvConfig,
    QvRow,
    advantage_budgets,
    best_h_by_budget,
    configs_from_settings,
    effective_gamma_tau,
    quantum_volume,
    qv_map,
)
from hidden_qubit.routing import Pairing, layer_cost
from hidden_qubit.topology import GridTopology


def _row(k, h, lines, log2_vq):
    n = (h + 1) * k * k
    return QvRow(k, h, lines, n, 4e-4, 1.0, 1.0, log2_vq)


class TestQvConfig:
    """Test cases for quantum-volume settings."""

    def test_defaults(self):
        """Test uniform mode by default."""
        cfg = QvConfig(4e-4)
        assert not cfg.differential
        assert cfg.epsilon == 1.0

    def test_invalid_values(self):
        """Test negative rates and zero samples are rejected."""
        with pytest.raises(ValidationError):
            QvConfig(-1e-3)
        with pytest.raises(ValidationError):
            QvConfig(1e-3, gamma_c_tau=-1.0)
        with pytest.raises(ValidationError):
            QvConfig(1e-3, epsilon=0.0)
        with pytest.raises(ValidationError):
            QvConfig(1e-3, samples=0)

    def test_configs_from_settings(self):
        """Test one configuration per preset plus the differential one."""
        settings = QvolumeConfig(gamma_taus=[4e-3, 4e-4], gamma_c_tau=4e-6, samples=3)
        cfgs = configs_from_settings(settings, seed=9)

        assert [cfg.gamma_tau for cfg in cfgs] == [4e-3, 4e-4, 0.0]
        assert cfgs[-1].differential
        assert cfgs[-1].gamma_c_tau == 4e-6
        assert all(cfg.seed == 9 and cfg.samples == 3 for cfg in cfgs)

        settings.differential = False
        assert len(configs_from_settings(settings, seed=9)) == 2


class TestQuantumVolume:
    """Test cases for the error-budget estimate."""

    def test_two_qubit_device(self):
        """Test a single pair needs one step."""
        topo = GridTopology(1, 1)

        result = quantum_volume(topo, QvConfig(0.1, samples=3))
        assert result.n_s_mean == 1.0
        assert result.d == pytest.approx(5.0)
        assert result.log2_vq == 2.0

        result = quantum_volume(topo, QvConfig(1.0, samples=3))
        assert result.log2_vq == pytest.approx(0.5)

    def test_saturates_at_qubit_count(self):
        """Test an error-free device reaches log2 V_Q = N."""
        result = quantum_volume(GridTopology(2, 1), QvConfig(0.0, samples=3))
        assert math.isinf(result.d)
        assert result.log2_vq == 8.0

    def test_depth_inverse_in_error_rate(self):
        """Test the depth scales as 1/Γτ for fixed samples."""
        topo = GridTopology(2, 1)
        low = quantum_volume(topo, QvConfig(1e-3, samples=4, seed=3))
        high = quantum_volume(topo, QvConfig(2e-3, samples=4, seed=3))

        assert low.n_s_mean == high.n_s_mean
        assert low.d == pytest.approx(2 * high.d)

    def test_reproducible(self):
        """Test equal seeds give equal step counts."""
        topo = GridTopology(2, 2)
        first = quantum_volume(topo, QvConfig(4e-4, samples=4, seed=21))
        second = quantum_volume(topo, QvConfig(4e-4, samples=4, seed=21))
        assert first == second

    def test_differential_rate(self):
        """Test the differential mode weights control and hidden rates."""
        topo = GridTopology(2, 1)
        assert effective_gamma_tau(topo, QvConfig(0.0, gamma_c_tau=1e-3)) == pytest.approx(5e-4)
        assert effective_gamma_tau(topo, QvConfig(2e-3, gamma_c_tau=1e-3)) == pytest.approx(1.5e-3)
        assert effective_gamma_tau(GridTopology(2, 0), QvConfig(0.0, gamma_c_tau=1e-3)) == (
            pytest.approx(1e-3)
        )
        assert effective_gamma_tau(topo, QvConfig(7e-4)) == 7e-4

    def test_hidden_relabeling_keeps_cost(self):
        """Test swapping hidden qubits within a grid group keeps the step count."""
        topo = GridTopology(2, 2)
        pairs = ((0, 6), (1, 4), (2, 10), (3, 8), (5, 11), (7, 9))
        relabeled = ((0, 6), (1, 5), (2, 10), (3, 8), (4, 11), (7, 9))

        n_g, n_s, _ = layer_cost(Pairing(pairs), topo)
        assert layer_cost(Pairing(relabeled), topo)[:2] == (n_g, n_s)


class TestQvMap:
    """Test cases for the quantum-volume table."""

    def test_rows(self, quiet_logger):
        """Test one row per grid and configuration."""
        cfgs = [QvConfig(4e-3, samples=2), QvConfig(4e-4, samples=2)]
        rows = qv_map([(2, 0), (2, 1)], cfgs)

        assert len(rows) == 4
        assert [(r.k, r.h) for r in rows] == [(2, 0), (2, 0), (2, 1), (2, 1)]
        assert rows[0].control_lines == 8
        assert rows[2].control_lines == 12
        assert rows[2].N == 8
        assert all(0 < r.log2_vq <= r.N for r in rows)
        assert rows[1].log2_vq >= rows[0].log2_vq
        assert "log2 V_Q" in quiet_logger.getvalue()

    def test_differential_column(self):
        """Test the rate column holds the effective rate in differential mode."""
        rows = qv_map([(2, 1)], [QvConfig(0.0, gamma_c_tau=4e-6, samples=2)])
        assert rows[0].gamma_tau == pytest.approx(2e-6)

    def test_to_dict(self):
        """Test rows serialize with every column."""
        data = _row(2, 1, 12, 3.5).to_dict()
        assert data["control_lines"] == 12
        assert data["N"] == 8


class TestBudgets:
    """Test cases for comparing grids at equal wiring cost."""

    def setup_method(self):
        """Set up test environment."""
        self.rows = [
            _row(2, 0, 8, 2.0),
            _row(3, 0, 21, 5.0),
            _row(2, 1, 12, 3.0),
            _row(2, 2, 16, 6.0),
            _row(4, 0, 40, 9.0),
        ]

    def test_best_h(self):
        """Test the best affordable grid is chosen."""
        assert best_h_by_budget(self.rows, 7) is None
        assert best_h_by_budget(self.rows, 8) == 0
        assert best_h_by_budget(self.rows, 12) == 1
        assert best_h_by_budget(self.rows, 20) == 2
        assert best_h_by_budget(self.rows, 40) == 0

    def test_ties_prefer_smaller_h(self):
        """Test equal volumes favour fewer hidden qubits."""
        rows = [_row(2, 0, 8, 4.0), _row(2, 1, 8, 4.0)]
        assert best_h_by_budget(rows, 8) == 0

    def test_advantage_budgets(self):
        """Test budgets where a hidden-qubit grid wins."""
        assert advantage_budgets(self.rows) == [12, 16, 21]
        assert advantage_budgets([_row(2, 0, 8, 2.0), _row(2, 1, 12, 1.0)]) == []


class TestOrderingClaims:
    """Test cases for hidden-qubit grids against plain grids at equal wiring."""

    SAMPLES = 10
    SEED = 20240501

    def setup_method(self):
        """Set up test environment."""
        self.uniform_high = QvConfig(4e-3, samples=self.SAMPLES, seed=self.SEED)
        self.uniform_low = QvConfig(4e-4, samples=self.SAMPLES, seed=self.SEED)
        self.differential = QvConfig(
            0.0, gamma_c_tau=4e-6, samples=self.SAMPLES, seed=self.SEED
        )

    def test_no_advantage_at_current_error_rates(self):
        """Test h = 0 is best at every budget when Γτ = 0.004."""
        grids = [(2, 0), (2, 2), (3, 0), (4, 0), (3, 3)]
        rows = qv_map(grids, [self.uniform_high])

        budgets = sorted({row.control_lines for row in rows})
        assert budgets == [8, 16, 21, 40, 48]
        for budget in budgets:
            assert best_h_by_budget(rows, budget) == 0, budget
        assert advantage_budgets(rows) == []

    def test_advantage_at_lower_error_rates(self):
        """Test a hidden-qubit grid wins at a small budget when Γτ = 4e-4."""
        grids = [(2, 0), (2, 1), (3, 0), (4, 0), (3, 3)]
        rows = qv_map(grids, [self.uniform_low])

        budgets = advantage_budgets(rows)
        assert budgets
        assert min(budgets) <= 30
        assert best_h_by_budget(rows, 12) == 1

    def test_differential_mode_extends_advantage(self):
        """Test quiet hidden qubits keep their advantage up to larger budgets."""
        grids = [(2, 0), (2, 1), (3, 0), (4, 0), (3, 3)]
        uniform = advantage_budgets(qv_map(grids, [self.uniform_low]))
        differential_rows = qv_map(grids, [self.differential])
        differential = advantage_budgets(differential_rows)

        assert uniform == [12]
        assert max(differential) > max(uniform)
        assert best_h_by_budget(differential_rows, 48) == 3
        # Only control qubits decohere, so every grid saturates at its qubit count
        for row in differential_rows:
            assert row.log2_vq == row.N
