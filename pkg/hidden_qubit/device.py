"""
Device Simulator Module

Ground-truth model of a control qubit (a transmon treated as a qutrit so that
cPHASE leakage is visible) coupled to a hidden qubit. Provides the parametric
iSWAP-type (SW) and cPHASE-type (CP) pulses with imperfect phases, virtual-Z
frame tracking, Lindblad decoherence and control-qubit-only readout.

Sequences are written in the usual operator order G_n.⋯.G_2.G_1: the
rightmost gate is executed first.
"""

import dataclasses
from collections.abc import Sequence
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.linalg import expm, polar

from hidden_qubit import config_constants as cc
from hidden_qubit.config import DeviceConfig
from hidden_qubit.config_validator import ConfigValidator
from hidden_qubit.exceptions import ValidationError
from hidden_qubit.gates import rotation
from hidden_qubit.qcore import (
    ComplexMatrix,
    ProcessMatrix,
    is_hermitian,
    ptm_from_channel,
    wrap_phase,
)

CONTROL_LEVELS = 3
HIDDEN_LEVELS = 2
SIM_DIM = CONTROL_LEVELS * HIDDEN_LEVELS

# Basis index 2·c + h for control level c and hidden level h
STATE_01 = 1
STATE_10 = 2
STATE_11 = 3
STATE_20 = 4


@dataclass(frozen=True)
class IswapPhases:
    """Single- and two-qubit phases picked up by a resonant SW pulse."""

    gamma1: float
    gamma2: float
    gamma3: float

    def __post_init__(self):
        for name in ("gamma1", "gamma2", "gamma3"):
            object.__setattr__(self, name, wrap_phase(getattr(self, name)))

    @classmethod
    def from_beta(cls, gamma1: float, gamma2: float, beta: float) -> "IswapPhases":
        return cls(gamma1, gamma2, beta - np.pi + gamma1 + gamma2)

    @property
    def sigma(self) -> float:
        return wrap_phase(self.gamma1 + self.gamma2)

    @property
    def beta(self) -> float:
        return wrap_phase(self.gamma3 + np.pi - self.gamma1 - self.gamma2)


@dataclass(frozen=True)
class CphasePhases:
    """
    Phases of a resonant 2π CP pulse.

    gamma01 multiplies |c1 h0⟩ (control excited), gamma10 multiplies |c0 h1⟩
    (hidden excited) and gamma11 multiplies |c1 h1⟩.
    """

    gamma01: float
    gamma10: float
    gamma11: float

    def __post_init__(self):
        for name in ("gamma01", "gamma10", "gamma11"):
            object.__setattr__(self, name, wrap_phase(getattr(self, name)))

    @property
    def delta(self) -> float:
        """Conditional phase γ11 − γ01 − γ10; π for an ideal cPHASE."""
        return wrap_phase(self.gamma11 - self.gamma01 - self.gamma10)


@dataclass(frozen=True)
class Durations:
    """Nominal gate durations in seconds."""

    single_qubit: float = cc.DEFAULT_SINGLE_QUBIT_DURATION
    iswap: float = cc.DEFAULT_TWO_QUBIT_DURATION
    cphase: float = cc.DEFAULT_TWO_QUBIT_DURATION


@dataclass(frozen=True)
class DeviceDocs:
    """Chip parameters carried for documentation only (Hz)."""

    control_frequency: float = 6.19e9
    hidden_frequency: float = 5.09e9
    control_anharmonicity: float = -290e6
    hidden_anharmonicity: float = -310e6


@dataclass(frozen=True)
class DeviceModel:
    """
    Immutable ground truth of the simulated device.

    Times are in seconds and couplings in rad/s. ``durations.iswap`` and
    ``durations.cphase`` are the nominal pulse lengths a tune-up starts from;
    the pulses themselves last as long as their ``length`` parameter.
    """

    t1_control: float = cc.DEFAULT_T1_CONTROL
    t2_control: float = cc.DEFAULT_T2_CONTROL
    t1_hidden: float = cc.DEFAULT_T1_HIDDEN
    t2_hidden: float = cc.DEFAULT_T2_HIDDEN
    g_iswap: float = cc.DEFAULT_G_ISWAP
    g_cphase: float = cc.DEFAULT_G_CPHASE
    true_iswap: IswapPhases = field(
        default_factory=lambda: IswapPhases.from_beta(
            cc.DEFAULT_GAMMA1, cc.DEFAULT_GAMMA2, cc.DEFAULT_BETA
        )
    )
    true_cphase: CphasePhases = field(
        default_factory=lambda: CphasePhases(
            cc.DEFAULT_GAMMA01, cc.DEFAULT_GAMMA10, cc.DEFAULT_GAMMA11
        )
    )
    durations: Durations = field(default_factory=Durations)
    doc: DeviceDocs = field(default_factory=DeviceDocs)
    decoherence: bool = True

    def __post_init__(self):
        validator = ConfigValidator()
        validator.validate_coherence("control", self.t1_control, self.t2_control)
        validator.validate_coherence("hidden", self.t1_hidden, self.t2_hidden)
        validator.validate_positive("g_iswap", self.g_iswap)
        validator.validate_positive("g_cphase", self.g_cphase)
        for name in ("single_qubit", "iswap", "cphase"):
            validator.validate_positive(
                f"durations.{name}", getattr(self.durations, name)
            )

    @property
    def beta(self) -> float:
        return self.true_iswap.beta

    @property
    def iswap_length(self) -> float:
        """Resonant transfer time π/(2g)."""
        return np.pi / (2 * self.g_iswap)

    @property
    def cphase_length(self) -> float:
        """Resonant 2π time π/g in the {|11⟩, |20⟩} subspace."""
        return np.pi / self.g_cphase

    def noiseless(self) -> "DeviceModel":
        return dataclasses.replace(self, decoherence=False)

    def with_phases(
        self,
        iswap: IswapPhases | None = None,
        cphase: CphasePhases | None = None,
    ) -> "DeviceModel":
        return dataclasses.replace(
            self,
            true_iswap=iswap or self.true_iswap,
            true_cphase=cphase or self.true_cphase,
        )

    def to_dict(self) -> dict[str, Any]:
        data = dataclasses.asdict(self)
        data["true_iswap"]["beta"] = self.beta
        return data

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "DeviceModel":
        """
        Build a model from :meth:`to_dict` output.

        ``true_iswap`` may give either ``gamma3`` or ``beta``.

        Raises:
            ValidationError: If required fields are missing or invalid
        """
        try:
            iswap = dict(data.get("true_iswap", {}))
            gamma1 = float(iswap.get("gamma1", cc.DEFAULT_GAMMA1))
            gamma2 = float(iswap.get("gamma2", cc.DEFAULT_GAMMA2))
            if "gamma3" in iswap:
                true_iswap = IswapPhases(gamma1, gamma2, float(iswap["gamma3"]))
            else:
                beta = float(iswap.get("beta", cc.DEFAULT_BETA))
                true_iswap = IswapPhases.from_beta(gamma1, gamma2, beta)
            cphase = data.get("true_cphase", {})
            true_cphase = CphasePhases(
                float(cphase.get("gamma01", cc.DEFAULT_GAMMA01)),
                float(cphase.get("gamma10", cc.DEFAULT_GAMMA10)),
                float(cphase.get("gamma11", cc.DEFAULT_GAMMA11)),
            )
            scalars = {
                name: float(data[name])
                for name in (
                    "t1_control",
                    "t2_control",
                    "t1_hidden",
                    "t2_hidden",
                    "g_iswap",
                    "g_cphase",
                )
                if name in data
            }
            return cls(
                **scalars,
                true_iswap=true_iswap,
                true_cphase=true_cphase,
                durations=Durations(**data.get("durations", {})),
                doc=DeviceDocs(**data.get("doc", {})),
                decoherence=bool(data.get("decoherence", True)),
            )
        except (TypeError, ValueError) as e:
            if isinstance(e, ValidationError):
                raise
            raise ValidationError(f"Invalid device description: {e}", "device") from e

    @classmethod
    def from_config(cls, config: DeviceConfig) -> "DeviceModel":
        return cls(
            t1_control=config.t1_control,
            t2_control=config.t2_control,
            t1_hidden=config.t1_hidden,
            t2_hidden=config.t2_hidden,
            g_iswap=config.g_iswap,
            g_cphase=config.g_cphase,
            true_iswap=IswapPhases.from_beta(config.gamma1, config.gamma2, config.beta),
            true_cphase=CphasePhases(config.gamma01, config.gamma10, config.gamma11),
            durations=Durations(
                config.single_qubit_duration,
                config.iswap_duration,
                config.cphase_duration,
            ),
            decoherence=not config.noiseless,
        )


# Gate types of a GateSequence


def _check_finite(name: str, value: float) -> None:
    if not np.isfinite(value):
        raise ValidationError(f"'{name}' must be finite, got {value}", name)


@dataclass(frozen=True)
class Rotation:
    """Control-qubit rotation by ``angle`` about the axis (cos φ, sin φ, 0)."""

    angle: float
    axis_phase: float = 0.0

    def __post_init__(self):
        _check_finite("angle", self.angle)
        _check_finite("axis_phase", self.axis_phase)


@dataclass(frozen=True)
class IswapPulse:
    """Parametric SW pulse of the given length (s) and detuning (rad/s)."""

    length: float
    detuning: float = 0.0

    def __post_init__(self):
        _check_finite("detuning", self.detuning)
        if not self.length > 0 or not np.isfinite(self.length):
            raise ValidationError(
                f"SW length must be positive, got {self.length}", "length"
            )


@dataclass(frozen=True)
class CphasePulse:
    """Parametric CP pulse of the given length (s) and detuning (rad/s)."""

    length: float
    detuning: float = 0.0

    def __post_init__(self):
        _check_finite("detuning", self.detuning)
        if not self.length > 0 or not np.isfinite(self.length):
            raise ValidationError(
                f"CP length must be positive, got {self.length}", "length"
            )


@dataclass(frozen=True)
class FrameShift:
    """Virtual Z rotation: shifts the control and hidden rotating frames."""

    delta1: float
    delta2: float = 0.0

    def __post_init__(self):
        _check_finite("delta1", self.delta1)
        _check_finite("delta2", self.delta2)


Gate = Rotation | IswapPulse | CphasePulse | FrameShift
GateSequence = Sequence[Gate]


def rx(angle: float = np.pi / 2) -> Rotation:
    return Rotation(angle, 0.0)


def ry(angle: float = np.pi / 2) -> Rotation:
    return Rotation(angle, np.pi / 2)


@dataclass(frozen=True)
class FrameState:
    """Accumulated rotating-frame phases of the control and hidden qubit."""

    delta1: float = 0.0
    delta2: float = 0.0

    @property
    def delta_p(self) -> float:
        """Phase of the parametric drive frame."""
        return self.delta1 - self.delta2

    def shifted(self, shift: FrameShift) -> "FrameState":
        return FrameState(self.delta1 + shift.delta1, self.delta2 + shift.delta2)

    def operator(self, dim: int = SIM_DIM) -> ComplexMatrix:
        """Diagonal Z(δ) = Σ e^{−i(c·δ1 + h·δ2)} |c h⟩⟨c h|."""
        levels = dim // HIDDEN_LEVELS
        c, h = np.divmod(np.arange(dim), HIDDEN_LEVELS)
        if levels not in (2, CONTROL_LEVELS):
            raise ValidationError(f"Unsupported dimension {dim}", "dim")
        return np.diag(np.exp(-1j * (c * self.delta1 + h * self.delta2)))


# Pulse unitaries


def _rabi(coupling: float, detuning: float, length: float) -> ComplexMatrix:
    # H = [[0, g], [g, Δ]] on (resonant state, partner state)
    hamiltonian = np.array([[0.0, coupling], [coupling, detuning]], dtype=complex)
    return expm(-1j * length * hamiltonian)


def _embed(block: ComplexMatrix) -> ComplexMatrix:
    """Lift a computational-subspace operator to the qutrit⊗qubit space."""
    full = np.eye(SIM_DIM, dtype=complex)
    full[:4, :4] = block
    return full


def iswap_unitary(model: DeviceModel, length: float, detuning: float) -> ComplexMatrix:
    """
    Computational-basis unitary of a SW pulse.

    The exchange between |c1 h0⟩ and |c0 h1⟩ is a generalized Rabi rotation
    with coupling g_iswap and detuning Δ. At resonance and length π/(2g) the
    result is

        [[1, 0, 0, 0], [0, 0, e^{iγ2}, 0], [0, e^{iγ1}, 0, 0], [0, 0, 0, e^{iγ3}]]

    with the phases of ``model.true_iswap``.
    """
    if not length > 0:
        raise ValidationError(f"SW length must be positive, got {length}", "length")
    phases = model.true_iswap
    half = (phases.gamma2 - phases.gamma1) / 2

    # Rabi in the (|c1 h0⟩, |c0 h1⟩) subspace, symmetric in Δ
    exchange = _rabi(model.g_iswap, detuning, length) * np.exp(0.5j * detuning * length)
    symmetric = np.eye(4, dtype=complex)
    subspace = [STATE_10, STATE_01]
    symmetric[np.ix_(subspace, subspace)] = exchange * np.exp(
        1j * ((phases.gamma1 + phases.gamma2) / 2 + np.pi / 2)
    )
    symmetric[STATE_11, STATE_11] = np.exp(1j * phases.gamma3)

    # The γ1/γ2 split is a hidden-qubit z rotation around the symmetric pulse
    split = np.diag([1, np.exp(1j * half), 1, np.exp(1j * half)])
    return split @ symmetric @ split.conj().T


def _cphase_pulse(model: DeviceModel, length: float, detuning: float) -> ComplexMatrix:
    phases = model.true_cphase
    unitary = np.eye(SIM_DIM, dtype=complex)
    unitary[STATE_01, STATE_01] = np.exp(1j * phases.gamma10)
    unitary[STATE_10, STATE_10] = np.exp(1j * phases.gamma01)
    subspace = [STATE_11, STATE_20]
    rabi = _rabi(model.g_cphase, detuning, length)
    unitary[np.ix_(subspace, subspace)] = rabi * np.exp(1j * (phases.gamma11 - np.pi))
    return unitary


def cphase_unitary(
    model: DeviceModel, length: float, detuning: float
) -> tuple[ComplexMatrix, float]:
    """
    Computational block of a CP pulse and the population it leaks to |20⟩.

    A resonant pulse of length π/g performs a full 2π rotation in the
    {|11⟩, |20⟩} subspace. The 4×4 block is made unitary by polar
    decomposition before it is returned.
    """
    if not length > 0:
        raise ValidationError(f"CP length must be positive, got {length}", "length")
    pulse = _cphase_pulse(model, length, detuning)
    leakage = float(abs(pulse[STATE_20, STATE_11]) ** 2)
    block, _ = polar(pulse[:4, :4])
    return block, leakage


def _control_rotation(gate: Rotation) -> ComplexMatrix:
    single = np.eye(CONTROL_LEVELS, dtype=complex)
    single[:2, :2] = rotation(gate.angle, gate.axis_phase)
    return np.kron(single, np.eye(HIDDEN_LEVELS))


def _pulse(model: DeviceModel, gate: Gate) -> tuple[ComplexMatrix, float]:
    match gate:
        case Rotation():
            return _control_rotation(gate), model.durations.single_qubit
        case IswapPulse(length=length, detuning=detuning):
            return _embed(iswap_unitary(model, length, detuning)), length
        case CphasePulse(length=length, detuning=detuning):
            return _cphase_pulse(model, length, detuning), length
    raise ValidationError(f"Unknown gate {gate!r}", "gate")


# Decoherence


def _lowering(levels: int) -> NDArray[np.float64]:
    return np.diag(np.sqrt(np.arange(1, levels)), 1)


@lru_cache(maxsize=256)
def _noise_propagator(
    dim: int,
    t1_control: float,
    t2_control: float,
    t1_hidden: float,
    t2_hidden: float,
    duration: float,
) -> NDArray[np.complex128]:
    control_levels = dim // HIDDEN_LEVELS
    identity_c = np.eye(control_levels)
    identity_h = np.eye(HIDDEN_LEVELS)
    a_c = np.kron(_lowering(control_levels), identity_h)
    a_h = np.kron(identity_c, _lowering(HIDDEN_LEVELS))

    collapse = []
    for lower, t1, t2 in ((a_c, t1_control, t2_control), (a_h, t1_hidden, t2_hidden)):
        dephasing = 1 / t2 - 1 / (2 * t1)
        collapse.append(np.sqrt(1 / t1) * lower)
        if dephasing > 0:
            collapse.append(np.sqrt(2 * dephasing) * (lower.T @ lower))

    # Row-major vectorization: vec(AρB) = (A ⊗ Bᵀ) vec(ρ)
    identity = np.eye(dim)
    generator = np.zeros((dim * dim, dim * dim), dtype=complex)
    for op in collapse:
        product = op.conj().T @ op
        generator += np.kron(op, op.conj())
        generator -= 0.5 * (np.kron(product, identity) + np.kron(identity, product.T))
    propagator = expm(generator * duration)
    propagator.setflags(write=False)
    return propagator


def apply_noise(rho: ComplexMatrix, model: DeviceModel, duration: float) -> ComplexMatrix:
    """
    Evolve a 4×4 or 6×6 density matrix under amplitude damping (rate 1/T1)
    and pure dephasing (rate 1/T2 − 1/(2T1)) on each qubit for ``duration``.

    Raises:
        ValidationError: If rho is not a Hermitian 4×4/6×6 matrix or the
            duration is negative
    """
    rho = np.asarray(rho, dtype=complex)
    if rho.shape not in ((4, 4), (SIM_DIM, SIM_DIM)):
        raise ValidationError(
            f"Density matrix must be 4×4 or 6×6, got {rho.shape}", "rho"
        )
    if not is_hermitian(rho, 1e-10):
        raise ValidationError("Density matrix must be Hermitian", "rho")
    if duration < 0:
        raise ValidationError(f"Duration must be non-negative, got {duration}", "duration")
    if duration == 0 or not model.decoherence:
        return rho
    dim = rho.shape[0]
    propagator = _noise_propagator(
        dim,
        model.t1_control,
        model.t2_control,
        model.t1_hidden,
        model.t2_hidden,
        float(duration),
    )
    evolved = (propagator @ rho.reshape(-1)).reshape(dim, dim)
    return (evolved + evolved.conj().T) / 2


# Sequence execution


def _lift(unitary: ComplexMatrix) -> ComplexMatrix:
    unitary = np.asarray(unitary, dtype=complex)
    if unitary.shape == (4, 4):
        return _embed(unitary)
    if unitary.shape == (SIM_DIM, SIM_DIM):
        return unitary
    raise ValidationError(f"Unsupported unitary shape {unitary.shape}", "unitary")


def ground_state() -> ComplexMatrix:
    rho = np.zeros((SIM_DIM, SIM_DIM), dtype=complex)
    rho[0, 0] = 1.0
    return rho


def excited_population(rho: ComplexMatrix) -> float:
    """P(control = 1): population of |c1 h0⟩ and |c1 h1⟩."""
    return float(np.clip(rho[STATE_10, STATE_10].real + rho[STATE_11, STATE_11].real, 0, 1))


def evolve(
    model: DeviceModel,
    steps: Sequence[tuple[ComplexMatrix, float]],
    rho: ComplexMatrix | None = None,
) -> ComplexMatrix:
    """
    Apply (unitary, duration) steps in chronological order, each followed by
    decoherence for its duration. Unitaries may be 4×4 or 6×6.
    """
    rho = ground_state() if rho is None else rho
    for unitary, duration in steps:
        unitary = _lift(unitary)
        rho = unitary @ rho @ unitary.conj().T
        rho = apply_noise(rho, model, duration)
    return rho


def _physical_steps(
    model: DeviceModel, seq: GateSequence, frames: FrameState
) -> tuple[list[tuple[ComplexMatrix, float]], FrameState]:
    steps = []
    for gate in reversed(list(seq)):
        if isinstance(gate, FrameShift):
            frames = frames.shifted(gate)
            continue
        unitary, duration = _pulse(model, gate)
        # A pulse played in frame F acts as Z(F)† G Z(F) in the lab frame
        z = frames.operator()
        steps.append((z.conj().T @ unitary @ z, duration))
    return steps, frames


def run_sequence(
    model: DeviceModel,
    seq: GateSequence,
    frames: FrameState | None = None,
    shots: int | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """
    Excitation probability of the control qubit after a gate sequence.

    Starts from |00⟩⟨00|, plays the gates right to left and returns
    Tr[(|1⟩⟨1| ⊗ 1) ρ]. With ``shots`` the estimate is a binomial sample
    drawn from ``rng``.

    Args:
        model: Ground-truth device
        seq: Gates in written order (rightmost first)
        frames: Initial rotating frames (default zero)
        shots: Optional number of measurement repetitions
        rng: Random generator for shot sampling

    Returns:
        p_excited in [0, 1]

    Raises:
        ValidationError: If a gate is malformed or shots are requested
            without a generator
    """
    steps, _ = _physical_steps(model, seq, frames or FrameState())
    probability = excited_population(evolve(model, steps))
    if shots:
        if rng is None:
            raise ValidationError("Shot sampling needs a random generator", "rng")
        return float(rng.binomial(shots, probability) / shots)
    return probability


def process_matrix(
    model: DeviceModel, seq: GateSequence, frames: FrameState | None = None
) -> ProcessMatrix:
    """
    PTM of a gate sequence restricted to the computational subspace.

    The virtual frame accumulated by the end of the sequence is applied
    explicitly, so the result is the full lab-frame channel. Population
    leaked to the third control level is lost, so the map may be slightly
    trace decreasing.
    """
    steps, final = _physical_steps(model, seq, frames or FrameState())
    z_final = final.operator(4)

    def channel(operator: ComplexMatrix) -> ComplexMatrix:
        rho = np.zeros((SIM_DIM, SIM_DIM), dtype=complex)
        rho[:4, :4] = operator
        block = evolve(model, steps, rho)[:4, :4]
        return z_final @ block @ z_final.conj().T

    return ptm_from_channel(channel)


__all__ = [
    "CphasePhases",
    "CphasePulse",
    "DeviceModel",
    "Durations",
    "FrameShift",
    "FrameState",
    "GateSequence",
    "IswapPhases",
    "IswapPulse",
    "Rotation",
    "apply_noise",
    "cphase_unitary",
    "evolve",
    "iswap_unitary",
    "process_matrix",
    "run_sequence",
    "rx",
    "ry",
]
