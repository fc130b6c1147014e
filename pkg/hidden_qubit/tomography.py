"""
Process Tomography Module

Quantum process tomography through a hidden qubit: preparation and
measurement sequences built from the gates under test, CPTP-constrained
least squares, the damped self-consistent iteration over the whole gate set
and fixing of the unobservable hidden-qubit z rotation.
"""

from collections.abc import Mapping
from dataclasses import dataclass, field
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import minimize_scalar

from hidden_qubit import config_constants as cc, gates
from hidden_qubit.calibration import CalibratedGateSet
from hidden_qubit.device import DeviceModel, process_matrix, run_sequence
from hidden_qubit.exceptions import ConvergenceError, InstabilityError, ValidationError
from hidden_qubit.logger import get_logger
from hidden_qubit.qcore import (
    PTM_DIM,
    ProcessMatrix,
    average_fidelity,
    measurement_vector,
    project_cptp,
    ptm_from_unitary,
    state_vector,
    wrap_phase,
)

GATE_NAMES: tuple[str, ...] = ("X90", "Y90", "ISWAP", "CPHASE")

IDEAL_UNITARIES = {
    "X90": gates.rx_control(),
    "Y90": gates.ry_control(),
    "ISWAP": gates.ISWAP,
    "CPHASE": gates.CPHASE,
}

Sequence = tuple[str, ...]

# Written order: the rightmost label is applied first
_PREPARATION_OPS: tuple[Sequence, ...] = ((), ("X180",), ("X90",), ("Y90",))
_ROTATIONS: tuple[str, ...] = ("X90", "Y90")


@dataclass(frozen=True)
class SequenceLibrary:
    preparations: tuple[Sequence, ...]
    tomography: tuple[Sequence, ...]


def build_sequences() -> SequenceLibrary:
    """
    The 16 preparations A2.iSWAP.A1 (no iSWAP when A1 = ID) and the 15
    measurement sequences that map σz⊗1 onto every non-trivial Pauli.
    """
    preparations = []
    for a1 in _PREPARATION_OPS:
        for a2 in _PREPARATION_OPS:
            preparations.append(a2 if not a1 else (*a2, "ISWAP", *a1))

    tomography: list[Sequence] = [()]
    tomography += [(j,) for j in _ROTATIONS]
    tomography.append(("ISWAP",))
    tomography += [(j, "CPHASE") for j in _ROTATIONS]
    tomography += [(j, "ISWAP") for j in _ROTATIONS]
    tomography += [(j, "ISWAP", "CPHASE") for j in _ROTATIONS]
    tomography += [(k, "ISWAP", j) for j in _ROTATIONS for k in _ROTATIONS]
    tomography.append(("X90", "CPHASE", "X90"))
    return SequenceLibrary(tuple(preparations), tuple(tomography))


def expand_labels(seq: Sequence) -> Sequence:
    """Replace X180 by two X90 so a sequence only uses the characterized gates."""
    expanded: list[str] = []
    for label in seq:
        if label == "X180":
            expanded += ["X90", "X90"]
        elif label in GATE_NAMES or label == "ID":
            if label != "ID":
                expanded.append(label)
        else:
            raise ValidationError(f"Unknown gate label '{label}'", "label")
    return tuple(expanded)


def sequence_unitary(seq: Sequence) -> NDArray[np.complex128]:
    """Ideal unitary of a written-order label sequence."""
    unitary = np.eye(4, dtype=complex)
    for label in expand_labels(seq):
        unitary = unitary @ IDEAL_UNITARIES[label]
    return unitary


@dataclass
class TomographyDataset:
    """Outcomes ⟨σz⊗1⟩ of every preparation (rows) and measurement (columns)."""

    target: Sequence
    mu: NDArray[np.float64]
    shots: int = 0
    seed: int | None = None
    metadata: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        self.mu = np.asarray(self.mu, dtype=float)
        if self.mu.shape != (16, 15):
            raise ValidationError(f"Dataset must be 16×15, got {self.mu.shape}", "mu")
        if np.any(np.abs(self.mu) > 1 + 1e-9):
            raise ValidationError("Outcomes must lie in [−1, 1]", "mu")

    def to_dict(self) -> dict[str, Any]:
        return {
            "target": list(self.target),
            "mu": self.mu.tolist(),
            "shots": self.shots,
            "seed": self.seed,
            "metadata": self.metadata,
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "TomographyDataset":
        try:
            return cls(
                tuple(data["target"]),
                np.array(data["mu"], dtype=float),
                int(data.get("shots", 0)),
                data.get("seed"),
                dict(data.get("metadata", {})),
            )
        except (KeyError, TypeError) as e:
            raise ValidationError(f"Invalid tomography dataset: {e}", "dataset") from e


@dataclass
class GateSetEstimate:
    """PTMs of X90, Y90, iSWAP and cPHASE with the gauge and residual trace."""

    processes: dict[str, ProcessMatrix]
    gauge_phi: float = 0.0
    residual_history: list[float] = field(default_factory=list)

    def __post_init__(self):
        missing = [name for name in GATE_NAMES if name not in self.processes]
        if missing:
            raise ValidationError(f"Missing processes: {', '.join(missing)}", "processes")

    def __getitem__(self, name: str) -> ProcessMatrix:
        return self.processes[name]

    @property
    def p_x(self) -> ProcessMatrix:
        return self.processes["X90"]

    @property
    def p_y(self) -> ProcessMatrix:
        return self.processes["Y90"]

    @property
    def p_iswap(self) -> ProcessMatrix:
        return self.processes["ISWAP"]

    @property
    def p_cphase(self) -> ProcessMatrix:
        return self.processes["CPHASE"]

    def fidelities(self) -> dict[str, float]:
        return {
            name: average_fidelity(self.processes[name], IDEAL_UNITARIES[name])
            for name in GATE_NAMES
        }

    def to_dict(self) -> dict[str, Any]:
        return {
            "processes": {name: self.processes[name].tolist() for name in GATE_NAMES},
            "gauge_phi": self.gauge_phi,
            "residual_history": list(self.residual_history),
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "GateSetEstimate":
        try:
            return cls(
                {k: np.array(v, dtype=float) for k, v in data["processes"].items()},
                float(data.get("gauge_phi", 0.0)),
                [float(r) for r in data.get("residual_history", [])],
            )
        except (KeyError, TypeError, AttributeError) as e:
            raise ValidationError(f"Invalid gate-set estimate: {e}", "estimate") from e


def ideal_gateset() -> GateSetEstimate:
    return GateSetEstimate(
        {name: ptm_from_unitary(IDEAL_UNITARIES[name]) for name in GATE_NAMES}
    )


def _initial_state() -> NDArray[np.float64]:
    rho = np.zeros((4, 4))
    rho[0, 0] = 1.0
    return state_vector(rho)


def _native_measurement() -> NDArray[np.float64]:
    return measurement_vector(np.diag([1.0, 1.0, -1.0, -1.0]))


def sequence_ptm(seq: Sequence, estimate: GateSetEstimate) -> ProcessMatrix:
    """PTM of a written-order sequence: the product in written order."""
    result = np.eye(PTM_DIM)
    for label in expand_labels(seq):
        result = result @ estimate[label]
    return result


def _spam_vectors(
    estimate: GateSetEstimate, library: SequenceLibrary
) -> tuple[NDArray[np.float64], NDArray[np.float64]]:
    rho0 = _initial_state()
    native = _native_measurement()
    states = np.array([sequence_ptm(a, estimate) @ rho0 for a in library.preparations])
    measurements = np.array(
        [sequence_ptm(b, estimate).T @ native for b in library.tomography]
    )
    return states, measurements


def _design_matrix(estimate: GateSetEstimate, library: SequenceLibrary) -> NDArray:
    # μ_AB = m_Bᵀ X r_A = (m_B ⊗ r_A) · vec(X), row-major vec
    states, measurements = _spam_vectors(estimate, library)
    return np.einsum("bi,aj->abij", measurements, states).reshape(
        len(states) * len(measurements), PTM_DIM * PTM_DIM
    )


def predict_outcomes(
    estimate: GateSetEstimate,
    target: Sequence | str | ProcessMatrix,
    library: SequenceLibrary | None = None,
) -> NDArray[np.float64]:
    """Predicted 16×15 outcomes μ_AB for a target given as labels or a PTM."""
    library = library or build_sequences()
    if isinstance(target, str):
        target = (target,)
    process = (
        sequence_ptm(target, estimate) if isinstance(target, tuple) else np.asarray(target)
    )
    states, measurements = _spam_vectors(estimate, library)
    return states @ process.T @ measurements.T


def collect_dataset(
    model: DeviceModel,
    gateset: CalibratedGateSet,
    target: Sequence | str,
    library: SequenceLibrary | None = None,
    shots: int = 0,
    rng: np.random.Generator | None = None,
    seed: int | None = None,
) -> TomographyDataset:
    """
    Run all 240 sequences B.X.A on the device and record 1 − 2·P(control=1).

    Args:
        model: Ground-truth device
        gateset: Calibrated pulses used for every label
        target: Gate label or written-order label sequence X
        library: Preparation and measurement sequences
        shots: Optional shots per sequence (0 = exact expectation)
        rng: Generator for shot sampling
        seed: Seed recorded in the dataset metadata
    """
    library = library or build_sequences()
    if isinstance(target, str):
        target = () if target == "ID" else (target,)
    if shots and rng is None:
        rng = np.random.default_rng(seed if seed is not None else cc.DEFAULT_SEED)
    mu = np.empty((len(library.preparations), len(library.tomography)))
    for a, prep in enumerate(library.preparations):
        for b, meas in enumerate(library.tomography):
            labels = expand_labels((*meas, *target, *prep))
            p = run_sequence(model, gateset.sequence(list(labels)), shots=shots or None, rng=rng)
            mu[a, b] = 1 - 2 * p
    return TomographyDataset(
        target,
        np.clip(mu, -1, 1),
        shots,
        seed,
        {"device": model.to_dict()},
    )


def _objective(design: NDArray, outcomes: NDArray, process: ProcessMatrix) -> float:
    return float(np.sum((design @ process.reshape(-1) - outcomes) ** 2))


def qpt_lstsq(
    data: TomographyDataset,
    spam: GateSetEstimate,
    warm_start: ProcessMatrix | None = None,
    library: SequenceLibrary | None = None,
    tol: float = cc.QPT_IMPROVEMENT_TOL,
    max_iter: int = cc.QPT_MAX_ITER,
) -> ProcessMatrix:
    """
    CPTP process minimizing Σ_AB (Tr[M ℬ∘𝒳∘𝒜(ρ0)] − μ_AB)².

    The unconstrained trace-preserving least-squares solution (or the warm
    start) is projected onto CPTP maps and refined by projected gradient
    descent with Barzilai–Borwein steps and backtracking until the objective
    improves by less than ``tol``.

    Args:
        data: Measured outcomes for the target process
        spam: Processes of the gates forming preparations and measurements
        warm_start: Optional starting point
        library: Sequence library the data was taken with

    Returns:
        CPTP process matrix

    Raises:
        ConvergenceError: If max_iter iterations do not meet the tolerance
    """
    library = library or build_sequences()
    design = _design_matrix(spam, library)
    outcomes = data.mu.reshape(-1)

    if warm_start is None:
        # Row 0 of a trace-preserving map is (1, 0, …, 0)
        fixed = design[:, 0]
        free, *_ = np.linalg.lstsq(design[:, PTM_DIM:], outcomes - fixed, rcond=None)
        start = np.vstack([np.eye(PTM_DIM)[0], free.reshape(PTM_DIM - 1, PTM_DIM)])
    else:
        start = np.asarray(warm_start, dtype=float)
    current = project_cptp(start)
    value = _objective(design, outcomes, current)

    lipschitz = 2 * np.linalg.norm(design, 2) ** 2
    step = 1 / lipschitz
    previous_gradient = None
    previous_point = None
    for _ in range(max_iter):
        gradient = (2 * design.T @ (design @ current.reshape(-1) - outcomes)).reshape(
            PTM_DIM, PTM_DIM
        )
        if previous_gradient is not None:
            s = current - previous_point
            y = gradient - previous_gradient
            curvature = float(np.sum(s * y))
            if curvature > 0:
                step = float(np.clip(np.sum(s * s) / curvature, 1 / lipschitz, 1e3 / lipschitz))

        trial_step = step
        while True:
            candidate = project_cptp(current - trial_step * gradient)
            candidate_value = _objective(design, outcomes, candidate)
            decrease = np.sum((candidate - current) ** 2) / (2 * trial_step)
            if candidate_value <= value - 1e-4 * decrease or trial_step <= 1 / lipschitz:
                break
            trial_step = max(trial_step / 2, 1 / lipschitz)

        improvement = value - candidate_value
        if improvement <= 0:
            return current
        previous_point, previous_gradient = current, gradient
        current, value = candidate, candidate_value
        if improvement < tol:
            return current
    raise ConvergenceError("qpt_lstsq", max_iter, value)


def first_round_qpt(
    datasets: Mapping[str, TomographyDataset],
    library: SequenceLibrary | None = None,
) -> GateSetEstimate:
    """Reconstruct every gate assuming ideal preparation and measurement."""
    ideal = ideal_gateset()
    return GateSetEstimate(
        {name: qpt_lstsq(datasets[name], ideal, library=library) for name in GATE_NAMES}
    )


def _hidden_frame_ptm(phi: float) -> ProcessMatrix:
    return ptm_from_unitary(gates.hidden_z_rotation(phi))


def _conjugate(processes: Mapping[str, ProcessMatrix], phi: float) -> dict[str, ProcessMatrix]:
    # R†∘G∘R as a PTM is Sᵀ G S with S the PTM of R
    frame = _hidden_frame_ptm(phi)
    return {name: frame.T @ process @ frame for name, process in processes.items()}


def gauge_fix(
    estimate: GateSetEstimate, grid_points: int = cc.GAUGE_GRID_POINTS
) -> GateSetEstimate:
    """
    Choose the hidden-qubit z rotation that brings the gate set closest to
    the ideal gates.

    The summed process fidelity of R_φ†∘G∘R_φ against the ideal gates is
    maximized over φ by a grid search followed by golden-section refinement.
    Predicted outcomes are unchanged by the rotation.
    """
    ideal = ideal_gateset()

    def loss(phi: float) -> float:
        conjugated = _conjugate(estimate.processes, phi)
        return -sum(
            float(np.trace(ideal[name].T @ conjugated[name])) for name in GATE_NAMES
        )

    grid = np.linspace(-np.pi, np.pi, grid_points, endpoint=False)
    values = [loss(phi) for phi in grid]
    index = int(np.argmin(values))
    spacing = grid[1] - grid[0]
    best = float(grid[index])
    try:
        result = minimize_scalar(
            loss,
            bracket=(best - spacing, best, best + spacing),
            method="golden",
            options={"xtol": 1e-10},
        )
        if result.fun <= values[index]:
            best = float(result.x)
    except ValueError as e:
        get_logger().warning(
            f"Gauge refinement failed ({e}); keeping grid optimum φ = {best:.4f}",
            "tomography",
        )

    best = wrap_phase(best)
    return GateSetEstimate(
        _conjugate(estimate.processes, best),
        wrap_phase(estimate.gauge_phi + best),
        list(estimate.residual_history),
    )


def _residual(
    current: Mapping[str, ProcessMatrix], reconstructed: Mapping[str, ProcessMatrix]
) -> float:
    return float(
        np.sqrt(
            sum(
                np.linalg.norm(current[name] - reconstructed[name]) ** 2
                for name in GATE_NAMES
            )
        )
    )


def self_consistent_qpt(
    datasets: Mapping[str, TomographyDataset],
    damping: float = cc.SC_LAMBDA,
    max_iter: int = cc.SC_MAX_ITER,
    library: SequenceLibrary | None = None,
    residual_floor: float = cc.SC_RESIDUAL_FLOOR,
) -> GateSetEstimate:
    """
    Damped fixed-point iteration P ← (1−λ)P + λ·QPT(D, P) over all four gates.

    Starts from the ideal gates; after each step the mixture is projected to
    CPTP and gauge fixed. The residual r_i = ‖P_i − QPT(D, P_i)‖_F is recorded
    and the iteration stops at its first increase, returning the previous
    iterate.

    Args:
        datasets: One dataset per gate name (X90, Y90, ISWAP, CPHASE)
        damping: λ in (0, 1]
        max_iter: Iteration cap
        library: Sequence library the data was taken with
        residual_floor: Residual below which the start is already consistent

    Returns:
        Gate-set estimate with its residual history

    Raises:
        ValidationError: If λ is outside (0, 1] or a dataset is missing
        InstabilityError: If the first step more than doubles the residual
    """
    if not 0 < damping <= 1:
        raise ValidationError(f"damping must lie in (0, 1], got {damping}", "damping")
    missing = [name for name in GATE_NAMES if name not in datasets]
    if missing:
        raise ValidationError(f"Missing datasets: {', '.join(missing)}", "datasets")
    library = library or build_sequences()
    logger = get_logger()

    estimate = ideal_gateset()
    history: list[float] = []
    previous: GateSetEstimate | None = None
    warm: dict[str, ProcessMatrix] = {}
    for index in range(max_iter):
        reconstructed = {
            name: qpt_lstsq(datasets[name], estimate, warm.get(name), library)
            for name in GATE_NAMES
        }
        warm = reconstructed
        residual = _residual(estimate.processes, reconstructed)
        history.append(residual)
        logger.qpt_iteration(index, residual)

        if index == 0 and residual < residual_floor:
            break
        if index == 1 and residual > 2 * history[0] and residual > residual_floor:
            raise InstabilityError(history[0], residual)
        if index > 0 and residual > history[-2]:
            estimate = previous
            break

        mixed = {
            name: project_cptp(
                (1 - damping) * estimate[name] + damping * reconstructed[name]
            )
            for name in GATE_NAMES
        }
        previous = estimate
        estimate = gauge_fix(GateSetEstimate(mixed, estimate.gauge_phi))
    else:
        # Cap reached: the last iterate has no residual of its own yet
        estimate = previous or estimate

    estimate.residual_history = history
    return estimate


def ground_truth_estimate(model: DeviceModel, gateset: CalibratedGateSet) -> GateSetEstimate:
    """
    True channels of the calibrated gates, made CPTP (leakage removes a
    little trace) and gauge fixed against the ideal gates.
    """
    processes = {
        name: project_cptp(process_matrix(model, gateset.expand(name)))
        for name in GATE_NAMES
    }
    return gauge_fix(GateSetEstimate(processes))
