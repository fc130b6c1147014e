"""
Ideal Gate Library Module

Ideal two-qubit unitaries (control ⊗ hidden) used as tomography targets,
reachability gate sets and fidelity references.
"""

import numpy as np
from scipy.linalg import expm

from hidden_qubit.qcore import PAULI_1Q, ComplexMatrix

IDENTITY_2 = np.eye(2, dtype=complex)


def rotation(angle: float, axis_phase: float = 0.0) -> ComplexMatrix:
    """Single-qubit rotation by angle about the equatorial axis (cos φ, sin φ, 0)."""
    axis = np.cos(axis_phase) * PAULI_1Q["X"] + np.sin(axis_phase) * PAULI_1Q["Y"]
    return np.cos(angle / 2) * IDENTITY_2 - 1j * np.sin(angle / 2) * axis


def on_control(single: ComplexMatrix) -> ComplexMatrix:
    return np.kron(single, IDENTITY_2)


def on_hidden(single: ComplexMatrix) -> ComplexMatrix:
    return np.kron(IDENTITY_2, single)


def rx_control(angle: float = np.pi / 2) -> ComplexMatrix:
    return on_control(rotation(angle, 0.0))


def ry_control(angle: float = np.pi / 2) -> ComplexMatrix:
    return on_control(rotation(angle, np.pi / 2))


def rx_hidden(angle: float = np.pi / 2) -> ComplexMatrix:
    return on_hidden(rotation(angle, 0.0))


def ry_hidden(angle: float = np.pi / 2) -> ComplexMatrix:
    return on_hidden(rotation(angle, np.pi / 2))


def hidden_z_rotation(phi: float) -> ComplexMatrix:
    """exp(iφ(1⊗σz)/2): the unobservable gauge rotation of the hidden qubit."""
    return expm(0.5j * phi * np.kron(IDENTITY_2, PAULI_1Q["Z"]))


ISWAP: ComplexMatrix = np.array(
    [[1, 0, 0, 0], [0, 0, 1j, 0], [0, 1j, 0, 0], [0, 0, 0, 1]], dtype=complex
)
CPHASE: ComplexMatrix = np.diag([1, 1, 1, -1]).astype(complex)
SWAP: ComplexMatrix = np.array(
    [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]], dtype=complex
)
SQRT_SWAP: ComplexMatrix = np.array(
    [
        [1, 0, 0, 0],
        [0, (1 + 1j) / 2, (1 - 1j) / 2, 0],
        [0, (1 - 1j) / 2, (1 + 1j) / 2, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def iswap_with_phase(beta: float) -> ComplexMatrix:
    """iSWAP whose exchange amplitude carries the residual e^{−iβ/2}."""
    unitary = ISWAP.copy()
    unitary[1, 2] = unitary[2, 1] = 1j * np.exp(-0.5j * beta)
    return unitary


GATE_LIBRARY: dict[str, ComplexMatrix] = {
    "RX_C": rx_control(),
    "RY_C": ry_control(),
    "RX_H": rx_hidden(),
    "RY_H": ry_hidden(),
    "ISWAP": ISWAP,
    "CPHASE": CPHASE,
    "SWAP": SWAP,
    "SQRT_SWAP": SQRT_SWAP,
}
