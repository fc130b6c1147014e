"""
Channel Core Module

Linear algebra and channel representations shared by every other module:
Pauli basis, Pauli transfer matrices (PTM), Choi matrices, CPTP projection and
gate fidelities for two-qubit channels. The control qubit always occupies the
first tensor slot.
"""

from collections.abc import Callable
from dataclasses import dataclass
from functools import cache

import numpy as np
from numpy.typing import NDArray

from hidden_qubit.config_constants import CPTP_MAX_ITER, CPTP_TOL, UNITARY_TOL
from hidden_qubit.exceptions import ConvergenceError, ValidationError

ComplexMatrix = NDArray[np.complex128]
ProcessMatrix = NDArray[np.float64]

DIM = 4
PTM_DIM = 16

PAULI_1Q: dict[str, ComplexMatrix] = {
    "I": np.eye(2, dtype=complex),
    "X": np.array([[0, 1], [1, 0]], dtype=complex),
    "Y": np.array([[0, -1j], [1j, 0]], dtype=complex),
    "Z": np.array([[1, 0], [0, -1]], dtype=complex),
}
PAULI_LABELS: tuple[str, ...] = tuple(a + b for a in "IXYZ" for b in "IXYZ")


@dataclass(frozen=True)
class PauliOperator:
    """Signed two-qubit Pauli operator, e.g. ``-ZX`` (control ⊗ hidden)."""

    label: str
    sign: int = 1

    def __post_init__(self):
        if self.label not in PAULI_LABELS:
            raise ValidationError(f"Unknown Pauli label '{self.label}'", "label")
        if self.sign not in (1, -1):
            raise ValidationError(f"Pauli sign must be ±1, got {self.sign}", "sign")

    @property
    def index(self) -> int:
        return PAULI_LABELS.index(self.label)

    @property
    def matrix(self) -> ComplexMatrix:
        return self.sign * pauli_basis()[self.index]

    def __str__(self) -> str:
        return ("+" if self.sign > 0 else "-") + self.label


@cache
def pauli_basis() -> NDArray[np.complex128]:
    """The 16 two-qubit Pauli matrices, shape (16, 4, 4), index 4·a + b."""
    basis = np.array(
        [np.kron(PAULI_1Q[label[0]], PAULI_1Q[label[1]]) for label in PAULI_LABELS]
    )
    basis.setflags(write=False)
    return basis


@cache
def _choi_basis() -> NDArray[np.complex128]:
    # T[k, l] = P_lᵀ ⊗ P_k (input ⊗ output)
    paulis = pauli_basis()
    basis = np.array(
        [
            [np.kron(paulis[j].T, paulis[k]) for j in range(PTM_DIM)]
            for k in range(PTM_DIM)
        ]
    )
    basis.setflags(write=False)
    return basis


def wrap_phase(phase: float) -> float:
    """Map an angle into (−π, π]."""
    return float(np.pi - np.mod(np.pi - phase, 2 * np.pi))


def is_unitary(matrix: NDArray, tol: float = UNITARY_TOL) -> bool:
    matrix = np.asarray(matrix)
    if matrix.ndim != 2 or matrix.shape[0] != matrix.shape[1]:
        return False
    identity = np.eye(matrix.shape[0])
    return bool(np.linalg.norm(matrix.conj().T @ matrix - identity) < tol)


def is_hermitian(matrix: NDArray, tol: float = UNITARY_TOL) -> bool:
    matrix = np.asarray(matrix)
    return bool(np.linalg.norm(matrix - matrix.conj().T) < tol)


def validate_unitary(
    matrix: NDArray, dim: int = DIM, tol: float = UNITARY_TOL
) -> ComplexMatrix:
    """
    Check that a matrix is a dim×dim unitary.

    Raises:
        ValidationError: If the shape is wrong or U†U deviates from 1
    """
    matrix = np.asarray(matrix, dtype=complex)
    if matrix.shape != (dim, dim):
        raise ValidationError(
            f"Expected a {dim}×{dim} matrix, got shape {matrix.shape}", "unitary"
        )
    if not is_unitary(matrix, tol):
        deviation = np.linalg.norm(matrix.conj().T @ matrix - np.eye(dim))
        raise ValidationError(
            f"Matrix is not unitary (‖U†U − 1‖ = {deviation:.3e})", "unitary"
        )
    return matrix


def _validate_ptm(ptm: NDArray) -> ProcessMatrix:
    ptm = np.asarray(ptm)
    if ptm.shape != (PTM_DIM, PTM_DIM):
        raise ValidationError(
            f"Process matrix must be 16×16, got shape {ptm.shape}", "ptm"
        )
    if np.iscomplexobj(ptm):
        if np.max(np.abs(ptm.imag)) > UNITARY_TOL:
            raise ValidationError("Process matrix must be real", "ptm")
        ptm = ptm.real
    return ptm.astype(float)


def ptm_from_unitary(unitary: NDArray, tol: float = UNITARY_TOL) -> ProcessMatrix:
    """
    Pauli transfer matrix of the unitary channel ρ ↦ UρU†.

    Entry (i, j) equals Tr[P_i U P_j U†]/4.

    Raises:
        ValidationError: If U is not a 4×4 unitary within tol
    """
    unitary = validate_unitary(unitary, tol=tol)
    paulis = pauli_basis()
    conjugated = unitary @ paulis @ unitary.conj().T
    return np.einsum("iab,jba->ij", paulis, conjugated).real / DIM


def ptm_from_channel(channel: Callable[[ComplexMatrix], ComplexMatrix]) -> ProcessMatrix:
    """PTM of an arbitrary linear map on 4×4 operators, R_ij = Tr[P_i E(P_j)]/4."""
    paulis = pauli_basis()
    images = np.array([channel(paulis[j]) for j in range(PTM_DIM)])
    return np.einsum("iab,jba->ij", paulis, images).real / DIM


def ptm_to_choi(ptm: NDArray) -> ComplexMatrix:
    """
    Choi matrix (input ⊗ output, trace 1) of a channel given as a PTM.

    J = Σ_kl R_kl (P_lᵀ ⊗ P_k)/16.
    """
    ptm = _validate_ptm(ptm)
    return np.einsum("kl,klxy->xy", ptm, _choi_basis()) / PTM_DIM


def choi_to_ptm(choi: NDArray) -> ProcessMatrix:
    """Inverse of :func:`ptm_to_choi`: R_kl = Tr[J (P_lᵀ ⊗ P_k)]."""
    choi = np.asarray(choi, dtype=complex)
    if choi.shape != (PTM_DIM, PTM_DIM):
        raise ValidationError(
            f"Choi matrix must be 16×16, got shape {choi.shape}", "choi"
        )
    return np.einsum("xy,klyx->kl", choi, _choi_basis()).real


def state_vector(rho: NDArray) -> NDArray[np.float64]:
    """Pauli coordinates Tr[P_i ρ]/2 of a two-qubit operator."""
    return np.einsum("iab,ba->i", pauli_basis(), np.asarray(rho)).real / 2


def measurement_vector(observable: NDArray) -> NDArray[np.float64]:
    """Pauli coordinates Tr[P_i M]/2, so that Tr[M E(ρ)] = mᵀ R r."""
    return state_vector(observable)


def _project_psd(ptm: ProcessMatrix) -> ProcessMatrix:
    choi = ptm_to_choi(ptm)
    choi = (choi + choi.conj().T) / 2
    eigenvalues, eigenvectors = np.linalg.eigh(choi)
    clipped = (eigenvectors * np.clip(eigenvalues, 0, None)) @ eigenvectors.conj().T
    return choi_to_ptm(clipped)


def _project_tp(ptm: ProcessMatrix) -> ProcessMatrix:
    projected = ptm.copy()
    projected[0] = 0.0
    projected[0, 0] = 1.0
    return projected


def min_choi_eigenvalue(ptm: NDArray) -> float:
    choi = ptm_to_choi(ptm)
    return float(np.linalg.eigvalsh((choi + choi.conj().T) / 2)[0])


def is_cptp(ptm: NDArray, tol: float = 1e-6) -> bool:
    ptm = _validate_ptm(ptm)
    tp_error = np.max(np.abs(ptm[0] - np.eye(PTM_DIM)[0]))
    return bool(tp_error < tol and min_choi_eigenvalue(ptm) > -tol)


def depolarizing_ptm() -> ProcessMatrix:
    ptm = np.zeros((PTM_DIM, PTM_DIM))
    ptm[0, 0] = 1.0
    return ptm


def project_cptp(
    ptm: NDArray, tol: float = CPTP_TOL, max_iter: int = CPTP_MAX_ITER
) -> ProcessMatrix:
    """
    Nearest CPTP map (Frobenius norm) to a 16×16 real matrix.

    Dykstra-corrected alternating projections between the PSD cone of Choi
    matrices and the trace-preserving affine subspace, iterated until the
    change between sweeps drops below tol. Any negative Choi eigenvalue left
    at that point is removed by mixing in the completely depolarizing channel,
    so the returned map is exactly trace preserving and positive. After such
    a mix the result is no longer the exact Frobenius-nearest point; it moves
    by the mixing weight (about ``16 · deficit``) times its distance to the
    depolarizing map.

    Args:
        ptm: Input matrix
        tol: Stopping threshold on the change between sweeps
        max_iter: Iteration budget

    Returns:
        CPTP process matrix

    Raises:
        ConvergenceError: If the budget is exhausted
    """
    current = _validate_ptm(ptm).copy()
    if is_cptp(current, tol):
        return current

    psd_correction = np.zeros_like(current)
    tp_correction = np.zeros_like(current)
    change = np.inf
    for _ in range(max_iter):
        psd_point = _project_psd(current + psd_correction)
        psd_correction = current + psd_correction - psd_point
        updated = _project_tp(psd_point + tp_correction)
        tp_correction = psd_point + tp_correction - updated
        change = float(np.linalg.norm(updated - current))
        current = updated
        if change < tol:
            break
    else:
        raise ConvergenceError("project_cptp", max_iter, change)

    deficit = -min_choi_eigenvalue(current)
    if deficit > 0:
        # Depolarizing Choi is 1/16 · identity
        weight = deficit / (deficit + 1.0 / PTM_DIM)
        current = (1 - weight) * current + weight * depolarizing_ptm()
    return current


def compose(first: NDArray, second: NDArray) -> ProcessMatrix:
    """PTM of ``first ∘ second`` (second applied first)."""
    return _validate_ptm(first) @ _validate_ptm(second)


def process_fidelity(ptm: NDArray, unitary_ideal: NDArray) -> float:
    """F_pro = Tr[R_idealᵀ R]/16."""
    ideal = ptm_from_unitary(unitary_ideal)
    return float(np.trace(ideal.T @ _validate_ptm(ptm))) / PTM_DIM


def average_fidelity(ptm: NDArray, unitary_ideal: NDArray) -> float:
    """Average gate fidelity (d·F_pro + 1)/(d + 1) with d = 4."""
    return (DIM * process_fidelity(ptm, unitary_ideal) + 1) / (DIM + 1)
