"""Test device simulator functionality."""

import numpy as np
import pytest

from hidden_qubit import gates
from hidden_qubit.config import DeviceConfig
from hidden_qubit.device import (
    CphasePhases,
    CphasePulse,
    DeviceModel,
    FrameShift,
    IswapPhases,
    IswapPulse,
    apply_noise,
    cphase_unitary,
    iswap_unitary,
    process_matrix,
    run_sequence,
    rx,
    ry,
)
from hidden_qubit.exceptions import ValidationError
from hidden_qubit.qcore import ptm_from_unitary


class TestDeviceModel:
    """Test cases for the ground-truth device description."""

    def test_phase_bookkeeping(self):
        """Test β and Σ are derived consistently from γ1, γ2, γ3."""
        phases = IswapPhases.from_beta(0.3, 0.7, 0.05)
        assert phases.sigma == pytest.approx(1.0)
        assert phases.beta == pytest.approx(0.05)
        assert CphasePhases(0.0, 0.0, np.pi).delta == pytest.approx(np.pi)

    def test_resonant_lengths(self):
        """Test resonant pulse lengths follow from the couplings."""
        model = DeviceModel(g_iswap=1e7, g_cphase=2e7)
        assert model.iswap_length == pytest.approx(np.pi / 2e7)
        assert model.cphase_length == pytest.approx(np.pi / 2e7)

    def test_from_config(self):
        """Test construction from the device configuration section."""
        model = DeviceModel.from_config(DeviceConfig(noiseless=True, beta=0.1))
        assert model.decoherence is False
        assert model.beta == pytest.approx(0.1)
        assert DeviceModel.from_config(DeviceConfig()).decoherence is True

    def test_dict_round_trip(self):
        """Test to_dict/from_dict preserve the physical parameters."""
        model = DeviceModel(t1_hidden=80e-6)
        restored = DeviceModel.from_dict(model.to_dict())
        assert restored.t1_hidden == pytest.approx(80e-6)
        assert restored.beta == pytest.approx(model.beta)
        assert restored.true_cphase.delta == pytest.approx(model.true_cphase.delta)

    def test_invalid_parameters(self):
        """Test unphysical parameters are rejected."""
        with pytest.raises(ValidationError):
            DeviceModel(t1_control=10e-6, t2_control=30e-6)
        with pytest.raises(ValidationError):
            DeviceModel(g_iswap=0.0)
        with pytest.raises(ValidationError):
            DeviceModel.from_dict({"t1_control": "slow"})
        with pytest.raises(ValidationError):
            IswapPulse(-1e-9)
        with pytest.raises(ValidationError):
            FrameShift(np.nan)


class TestPulses:
    """Test cases for pulse unitaries."""

    def setup_method(self):
        """Set up test environment."""
        self.model = DeviceModel().noiseless()

    def test_resonant_iswap_phases(self):
        """Test a resonant SW pulse carries the documented phases."""
        phases = IswapPhases(0.3, -0.2, 0.5)
        model = self.model.with_phases(iswap=phases)
        unitary = iswap_unitary(model, model.iswap_length, 0.0)

        expected = np.zeros((4, 4), dtype=complex)
        expected[0, 0] = 1
        expected[1, 2] = np.exp(-0.2j)
        expected[2, 1] = np.exp(0.3j)
        expected[3, 3] = np.exp(0.5j)
        assert np.allclose(unitary, expected)

    def test_ideal_phases_give_iswap(self):
        """Test γ1 = γ2 = π/2, γ3 = 0 is the ideal iSWAP."""
        model = self.model.with_phases(iswap=IswapPhases(np.pi / 2, np.pi / 2, 0.0))
        unitary = iswap_unitary(model, model.iswap_length, 0.0)
        assert np.allclose(unitary, gates.ISWAP)

    def test_resonant_cphase(self):
        """Test a resonant 2π CP pulse is diagonal with no leakage."""
        model = self.model
        block, leakage = cphase_unitary(model, model.cphase_length, 0.0)
        phases = model.true_cphase
        expected = np.diag(
            np.exp(1j * np.array([0.0, phases.gamma10, phases.gamma01, phases.gamma11]))
        )
        assert leakage == pytest.approx(0.0, abs=1e-12)
        assert np.allclose(block, expected)

    def test_half_cphase_leaks(self):
        """Test half the resonant length moves |11> entirely to |20>."""
        _, leakage = cphase_unitary(self.model, self.model.cphase_length / 2, 0.0)
        assert leakage == pytest.approx(1.0)


class TestSequences:
    """Test cases for sequence execution and readout."""

    def setup_method(self):
        """Set up test environment."""
        self.model = DeviceModel().noiseless()

    def test_rotations(self):
        """Test control-qubit rotations and readout."""
        assert run_sequence(self.model, []) == pytest.approx(0.0)
        assert run_sequence(self.model, [rx(np.pi)]) == pytest.approx(1.0)
        assert run_sequence(self.model, [ry(np.pi / 2)]) == pytest.approx(0.5)

    def test_written_order(self):
        """Test the rightmost gate is executed first."""
        length = self.model.iswap_length
        # Excite the control, then swap the excitation into the hidden qubit
        assert run_sequence(self.model, [IswapPulse(length), rx(np.pi)]) == pytest.approx(0.0)
        assert run_sequence(self.model, [rx(np.pi), IswapPulse(length)]) == pytest.approx(1.0)

    def test_frame_shift_reverses_axis(self):
        """Test a π frame shift turns the second X90 into an X−90."""
        assert run_sequence(self.model, [rx(), rx()]) == pytest.approx(1.0)
        assert run_sequence(self.model, [rx(), FrameShift(np.pi), rx()]) == pytest.approx(0.0)

    def test_shots(self):
        """Test shot sampling is reproducible and needs a generator."""
        seq = [ry(np.pi / 2)]
        first = run_sequence(self.model, seq, shots=200, rng=np.random.default_rng(1))
        second = run_sequence(self.model, seq, shots=200, rng=np.random.default_rng(1))
        assert first == second
        assert 0.3 < first < 0.7
        with pytest.raises(ValidationError):
            run_sequence(self.model, seq, shots=10)

    def test_noiseless_process_matrix(self):
        """Test process matrices of ideal single-qubit gates."""
        assert np.allclose(
            process_matrix(self.model, [rx(np.pi / 2)]), ptm_from_unitary(gates.rx_control())
        )
        pulse = IswapPulse(self.model.iswap_length)
        expected = ptm_from_unitary(iswap_unitary(self.model, pulse.length, 0.0))
        assert np.allclose(process_matrix(self.model, [pulse]), expected)

    def test_cphase_process_matrix(self):
        """Test a resonant CP pulse is a diagonal-phase channel."""
        pulse = CphasePulse(self.model.cphase_length)
        block, _ = cphase_unitary(self.model, pulse.length, 0.0)
        assert np.allclose(process_matrix(self.model, [pulse]), ptm_from_unitary(block))


class TestDecoherence:
    """Test cases for amplitude damping and dephasing."""

    def setup_method(self):
        """Set up test environment."""
        self.model = DeviceModel()

    def test_t1_decay(self):
        """Test control excitation decays as exp(−t/T1)."""
        rho = np.zeros((4, 4), dtype=complex)
        rho[2, 2] = 1.0
        evolved = apply_noise(rho, self.model, self.model.t1_control)
        assert np.trace(evolved).real == pytest.approx(1.0)
        assert evolved[2, 2].real == pytest.approx(np.exp(-1.0))

    def test_dephasing_rate(self):
        """Test control coherence decays as exp(−t/T2)."""
        plus = np.full((2, 2), 0.5, dtype=complex)
        ground = np.diag([1.0, 0.0]).astype(complex)
        rho = np.kron(plus, ground)
        t = 5e-6
        evolved = apply_noise(rho, self.model, t)
        assert abs(evolved[0, 2]) == pytest.approx(0.5 * np.exp(-t / self.model.t2_control))

    def test_noiseless_and_zero_duration(self):
        """Test noise is skipped when disabled or for zero duration."""
        rho = np.eye(4, dtype=complex) / 4
        assert np.allclose(apply_noise(rho, self.model.noiseless(), 1e-3), rho)
        assert np.allclose(apply_noise(rho, self.model, 0.0), rho)

    def test_noisy_readout_below_ideal(self):
        """Test decoherence lowers a π-pulse excitation slightly."""
        p = run_sequence(self.model, [rx(np.pi)])
        assert 0.99 < p < 1.0

    def test_invalid_inputs(self):
        """Test shape, hermiticity and duration checks."""
        with pytest.raises(ValidationError):
            apply_noise(np.eye(3), self.model, 1e-6)
        with pytest.raises(ValidationError):
            apply_noise(np.triu(np.ones((4, 4))), self.model, 1e-6)
        with pytest.raises(ValidationError):
            apply_noise(np.eye(4) / 4, self.model, -1.0)
