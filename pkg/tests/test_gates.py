"""Test ideal gate library functionality."""

import numpy as np

from hidden_qubit import gates
from hidden_qubit.qcore import PAULI_1Q, is_unitary, pauli_basis


class TestGateLibrary:
    """Test cases for the ideal two-qubit unitaries."""

    def test_all_gates_unitary(self):
        """Test every library gate is a 4×4 unitary."""
        for name, unitary in gates.GATE_LIBRARY.items():
            assert unitary.shape == (4, 4), name
            assert is_unitary(unitary), name

    def test_rotation_axes(self):
        """Test π rotations equal −i times the Pauli matrix."""
        assert np.allclose(gates.rotation(np.pi), -1j * PAULI_1Q["X"])
        assert np.allclose(gates.rotation(np.pi, np.pi / 2), -1j * PAULI_1Q["Y"])

    def test_control_first_slot(self):
        """Test control rotations act on the first tensor factor."""
        x180 = gates.rx_control(np.pi)
        assert np.allclose(x180, -1j * pauli_basis()[4])  # XI
        assert np.allclose(gates.rx_hidden(np.pi), -1j * pauli_basis()[1])  # IX

    def test_sqrt_swap_squares_to_swap(self):
        """Test √SWAP² = SWAP."""
        assert np.allclose(gates.SQRT_SWAP @ gates.SQRT_SWAP, gates.SWAP)

    def test_iswap_exchanges_with_phase_i(self):
        """Test iSWAP maps |01> to i|10>."""
        state = np.array([0, 1, 0, 0], dtype=complex)
        assert np.allclose(gates.ISWAP @ state, [0, 0, 1j, 0])
        assert np.allclose(gates.iswap_with_phase(0.0), gates.ISWAP)

    def test_hidden_z_rotation(self):
        """Test the gauge rotation is diagonal and acts only on the hidden qubit."""
        phi = 0.7
        rotation = gates.hidden_z_rotation(phi)
        expected = np.diag(np.exp(0.5j * phi * np.array([1, -1, 1, -1])))
        assert np.allclose(rotation, expected)
        assert np.allclose(gates.hidden_z_rotation(0.0), np.eye(4))
