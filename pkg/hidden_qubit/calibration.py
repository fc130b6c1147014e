"""
Calibration Module

Tune-up of the iSWAP and cPHASE gates of a control+hidden qubit pair using
only control-qubit drives and readout: pulse length and detuning scans with
quadratic fits, Ramsey phase measurements with cosine fits and the spin-echo
scan of the conditional phase.
"""

from collections.abc import Callable
from dataclasses import asdict, dataclass, field
from functools import partial
from typing import Any

import numpy as np
from numpy.typing import NDArray
from scipy.optimize import curve_fit

from hidden_qubit import config_constants as cc
from hidden_qubit.config import CalibrationConfig
from hidden_qubit.device import (
    CphasePulse,
    DeviceModel,
    FrameShift,
    Gate,
    IswapPulse,
    Rotation,
    run_sequence,
    rx,
    ry,
)
from hidden_qubit.exceptions import (
    FitQualityError,
    PreconditionError,
    ScanWindowError,
    ValidationError,
)
from hidden_qubit.logger import get_logger
from hidden_qubit.qcore import wrap_phase

# Tune-up steps in the order they must run
STEP_ISWAP = "iswap"
STEP_ISWAP_PHASES = "iswap-phases"
STEP_CPHASE_LENGTH = "cphase-length"
STEP_CPHASE_FREQUENCY = "cphase-frequency"
STEP_CPHASE_PHASES = "cphase-phases"
TUNEUP_STEPS: tuple[str, ...] = (
    STEP_ISWAP,
    STEP_ISWAP_PHASES,
    STEP_CPHASE_LENGTH,
    STEP_CPHASE_FREQUENCY,
    STEP_CPHASE_PHASES,
)

GATE_LABELS: tuple[str, ...] = ("X90", "Y90", "X180", "ISWAP", "CPHASE")


@dataclass(frozen=True)
class CalibrationSettings:
    """Scan densities and stopping rules of the tune-up."""

    scan_points: int = cc.SCAN_POINTS
    scan_window: float = cc.SCAN_WINDOW
    theta_points: int = cc.THETA_POINTS
    fit_points: int = cc.QUADRATIC_FIT_POINTS
    repetitions: tuple[int, ...] = cc.REPETITIONS
    max_rounds: int = cc.MAX_CALIBRATION_ROUNDS
    rel_tol: float = cc.CALIBRATION_REL_TOL
    shots: int = 0

    def __post_init__(self):
        if self.scan_points < self.fit_points or self.fit_points < 3:
            raise ValidationError(
                "Scans need at least as many points as the quadratic fit (≥ 3)",
                "scan_points",
            )
        if not 0 < self.scan_window < 1:
            raise ValidationError("scan_window must lie in (0, 1)", "scan_window")
        if self.theta_points < 4:
            raise ValidationError("theta_points must be ≥ 4", "theta_points")

    @classmethod
    def from_config(cls, config: CalibrationConfig, shots: int = 0) -> "CalibrationSettings":
        return cls(
            scan_points=config.scan_points,
            scan_window=config.scan_window,
            theta_points=config.theta_points,
            fit_points=config.fit_points,
            max_rounds=config.max_rounds,
            rel_tol=config.rel_tol,
            shots=shots,
        )


@dataclass
class FitReport:
    """Outcome of one fitted scan."""

    step: str
    parameter: str
    estimate: float
    metric: float
    scan: dict[str, list[float]] = field(default_factory=dict)


@dataclass
class IswapCalibration:
    length: float
    detuning: float
    sigma: float = 0.0
    beta: float = 0.0
    delta1: float = 0.0
    delta2: float = 0.0


@dataclass
class CphaseCalibration:
    length: float
    detuning: float = 0.0
    conditional_phase: float = np.pi
    gamma01: float = 0.0
    gamma10: float = 0.0


class TuneupTracker:
    """Records completed tune-up steps and enforces their order."""

    def __init__(self, completed: list[str] | None = None):
        self.completed: list[str] = list(completed or [])

    def require(self, step: str) -> None:
        """
        Raises:
            PreconditionError: If a step that must precede ``step`` is missing
        """
        if step not in TUNEUP_STEPS:
            raise ValidationError(f"Unknown tune-up step '{step}'", "step")
        earlier = TUNEUP_STEPS[: TUNEUP_STEPS.index(step)]
        missing = [s for s in earlier if s not in self.completed]
        if missing:
            raise PreconditionError(step, missing)

    def complete(self, step: str) -> None:
        self.require(step)
        if step not in self.completed:
            self.completed.append(step)

    def is_complete(self, step: str) -> bool:
        return step in self.completed


@dataclass
class CalibratedGateSet:
    """
    Pulse parameters and frame corrections produced by the tune-up.

    ``expand`` turns a gate label into device operations in written order,
    so a calibrated iSWAP is the SW pulse followed by the frame shift.
    """

    iswap: IswapCalibration | None = None
    cphase: CphaseCalibration | None = None
    fit_reports: list[FitReport] = field(default_factory=list)
    tracker: TuneupTracker = field(default_factory=TuneupTracker)

    def expand(self, label: str) -> list[Gate]:
        """
        Raises:
            ValidationError: For unknown labels
            PreconditionError: If the gate has not been calibrated yet
        """
        match label:
            case "X90":
                return [rx(np.pi / 2)]
            case "Y90":
                return [ry(np.pi / 2)]
            case "X180":
                return [rx(np.pi)]
            case "ISWAP":
                if self.iswap is None or not self.tracker.is_complete(STEP_ISWAP_PHASES):
                    raise PreconditionError("ISWAP", [STEP_ISWAP, STEP_ISWAP_PHASES])
                return [
                    FrameShift(self.iswap.delta1, self.iswap.delta2),
                    IswapPulse(self.iswap.length, self.iswap.detuning),
                ]
            case "CPHASE":
                if self.cphase is None or not self.tracker.is_complete(STEP_CPHASE_PHASES):
                    missing = [s for s in TUNEUP_STEPS if not self.tracker.is_complete(s)]
                    raise PreconditionError("CPHASE", missing)
                return [
                    FrameShift(self.cphase.gamma01, self.cphase.gamma10),
                    CphasePulse(self.cphase.length, self.cphase.detuning),
                ]
        raise ValidationError(
            f"Unknown gate label '{label}'. Known: {', '.join(GATE_LABELS)}", "label"
        )

    def sequence(self, labels: list[str]) -> list[Gate]:
        """Device operations for a written-order list of gate labels."""
        return [gate for label in labels for gate in self.expand(label)]

    def raw_iswap(self) -> IswapPulse:
        if self.iswap is None:
            raise PreconditionError("SW", [STEP_ISWAP])
        return IswapPulse(self.iswap.length, self.iswap.detuning)

    def to_dict(self) -> dict[str, Any]:
        return {
            "iswap": asdict(self.iswap) if self.iswap else None,
            "cphase": asdict(self.cphase) if self.cphase else None,
            "completed": list(self.tracker.completed),
            "fit_reports": [asdict(report) for report in self.fit_reports],
        }

    @classmethod
    def from_dict(cls, data: dict[str, Any]) -> "CalibratedGateSet":
        try:
            return cls(
                iswap=IswapCalibration(**data["iswap"]) if data.get("iswap") else None,
                cphase=CphaseCalibration(**data["cphase"]) if data.get("cphase") else None,
                fit_reports=[FitReport(**r) for r in data.get("fit_reports", [])],
                tracker=TuneupTracker(data.get("completed", [])),
            )
        except TypeError as e:
            raise ValidationError(f"Invalid gate set description: {e}", "gateset") from e


# Fitting helpers


@dataclass(frozen=True)
class CosineFit:
    offset: float
    amplitude: float
    phase: float
    r2: float


def _cosine(theta: NDArray, a: float, b: float, c: float) -> NDArray:
    return a + b * np.cos(theta) + c * np.sin(theta)


def fit_cosine(theta: NDArray, p: NDArray, step: str = "ramsey") -> CosineFit:
    """
    Fit p(θ) = a + b·cos θ + c·sin θ; the phase is atan2(c, b).

    Raises:
        FitQualityError: If R² < 0.9
    """
    theta = np.asarray(theta, dtype=float)
    p = np.asarray(p, dtype=float)
    design = np.column_stack([np.ones_like(theta), np.cos(theta), np.sin(theta)])
    guess, *_ = np.linalg.lstsq(design, p, rcond=None)
    params, _ = curve_fit(_cosine, theta, p, p0=guess)

    ss_res = float(np.sum((p - _cosine(theta, *params)) ** 2))
    ss_tot = float(np.sum((p - p.mean()) ** 2))
    r2 = 1 - ss_res / ss_tot if ss_tot > 0 else 0.0
    if r2 < cc.MIN_COSINE_R2:
        raise FitQualityError(
            step, r2, cc.MIN_COSINE_R2, {"theta": theta.tolist(), "p_e": p.tolist()}
        )
    a, b, c = params
    return CosineFit(float(a), float(np.hypot(b, c)), float(np.arctan2(c, b)), r2)


def quadratic_extremum(
    step: str,
    parameter: str,
    x: NDArray,
    p: NDArray,
    fit_points: int,
    minimize: bool = True,
) -> tuple[float, float]:
    """
    Vertex of a parabola fitted to the points nearest the sampled extremum.

    Returns:
        (location, rms residual of the fit)

    Raises:
        ScanWindowError: If the extremum sits on the scan edge or the fitted
            parabola has the wrong curvature
    """
    x = np.asarray(x, dtype=float)
    p = np.asarray(p, dtype=float)
    index = int(np.argmin(p) if minimize else np.argmax(p))
    window = (float(x[0]), float(x[-1]))
    if index in (0, len(x) - 1):
        raise ScanWindowError(step, parameter, window)

    start = int(np.clip(index - fit_points // 2, 0, len(x) - fit_points))
    chosen = slice(start, start + fit_points)
    spacing = x[1] - x[0]
    u = (x[chosen] - x[index]) / spacing
    coeffs = np.polyfit(u, p[chosen], 2)
    curvature, slope, _ = coeffs
    if (curvature <= 0) if minimize else (curvature >= 0):
        raise ScanWindowError(step, parameter, window)
    vertex = float(x[index] - slope / (2 * curvature) * spacing)
    if not window[0] <= vertex <= window[1]:
        raise ScanWindowError(step, parameter, window)
    rms = float(np.sqrt(np.mean((np.polyval(coeffs, u) - p[chosen]) ** 2)))
    return vertex, rms


def wrap_half_turn(phase: float) -> float:
    """Map an angle defined modulo π into (−π/2, π/2]."""
    return float(np.pi / 2 - np.mod(np.pi / 2 - phase, np.pi))


# Measurement plumbing


class _Experiment:
    """Runs sequences on the device with the tune-up's shot settings."""

    def __init__(
        self,
        model: DeviceModel,
        settings: CalibrationSettings,
        rng: np.random.Generator | None,
        gateset: CalibratedGateSet,
    ):
        if settings.shots and rng is None:
            rng = np.random.default_rng(cc.DEFAULT_SEED)
        self.model = model
        self.settings = settings
        self.rng = rng
        self.gateset = gateset
        self.logger = get_logger()

    def measure(self, seq: list[Gate]) -> float:
        return run_sequence(
            self.model, seq, shots=self.settings.shots or None, rng=self.rng
        )

    def scan(
        self,
        step: str,
        parameter: str,
        values: NDArray,
        build: Callable[[float], list[Gate]],
        minimize: bool,
    ) -> float:
        p = np.array([self.measure(build(float(v))) for v in values])
        estimate, rms = quadratic_extremum(
            step, parameter, values, p, self.settings.fit_points, minimize
        )
        self.gateset.fit_reports.append(
            FitReport(
                step,
                parameter,
                estimate,
                rms,
                {"parameter": values.tolist(), "p_e": p.tolist()},
            )
        )
        self.logger.scan_completed(step, parameter, estimate)
        return estimate

    def ramsey_phase(
        self, step: str, parameter: str, build: Callable[[Rotation], list[Gate]]
    ) -> float:
        theta = np.linspace(0, 2 * np.pi, self.settings.theta_points, endpoint=False)
        p = np.array([self.measure(build(Rotation(np.pi / 2, t))) for t in theta])
        fit = fit_cosine(theta, p, step)
        self.gateset.fit_reports.append(
            FitReport(
                step,
                parameter,
                fit.phase,
                fit.r2,
                {"parameter": theta.tolist(), "p_e": p.tolist()},
            )
        )
        return fit.phase

    def ramsey_difference(
        self,
        step: str,
        parameter: str,
        with_gate: list[Gate],
        reference: list[Gate],
        preparation: list[Gate] | None = None,
    ) -> float:
        """Phase of R_θ.with_gate.Rx(π/2).prep minus that of the reference."""
        preparation = preparation or []

        def sequence(middle: list[Gate]) -> Callable[[Rotation], list[Gate]]:
            return lambda r: [r, *middle, rx(np.pi / 2), *preparation]

        measured = self.ramsey_phase(step, parameter, sequence(with_gate))
        ref = self.ramsey_phase(step, f"{parameter}-reference", sequence(reference))
        value = wrap_phase(measured - ref)
        self.logger.scan_completed(step, parameter, value)
        return value


def _weighted(estimates: dict[int, float]) -> float:
    weights = np.array(list(estimates))
    return float(np.dot(weights, list(estimates.values())) / weights.sum())


def _linspace(center: float, half_width: float, points: int) -> NDArray:
    return np.linspace(center - half_width, center + half_width, points)


def _repetition_scans(
    experiment: _Experiment,
    step: str,
    parameter: str,
    center: float,
    half_width: float,
    build: Callable[[float, int], list[Gate]],
    minimize: bool,
) -> float:
    """
    Scan with n = 1, 3, 5 pulses, shrinking the window by n and centring each
    scan on the previous estimate; returns the n-weighted estimate.
    """
    estimates = {}
    for n in experiment.settings.repetitions:
        values = _linspace(center, half_width / n, experiment.settings.scan_points)
        estimates[n] = experiment.scan(
            step, f"{parameter}(n={n})", values, partial(build, n=n), minimize
        )
        center = estimates[n]
    return _weighted(estimates)


def _sw_train(length: float, detuning: float, n: int) -> list[Gate]:
    """SWⁿ.Rx(π)"""
    return [*[IswapPulse(length, detuning)] * n, rx(np.pi)]


# Tune-up steps


def calibrate_iswap(
    model: DeviceModel,
    settings: CalibrationSettings | None = None,
    gateset: CalibratedGateSet | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[float, float]:
    """
    Find the SW pulse length and detuning that minimize the control-qubit
    excitation left after SWⁿ.Rx(π).

    Length and detuning are scanned alternately for n ∈ {1, 3, 5}, with the
    scan window divided by n, and the n-weighted estimates are iterated until
    both change by less than ``rel_tol`` between rounds.

    Args:
        model: Device to calibrate
        settings: Scan settings
        gateset: Gate set receiving the result and fit reports
        rng: Generator for shot sampling

    Returns:
        (length, detuning)

    Raises:
        ScanWindowError: If a scan has no interior minimum
    """
    settings = settings or CalibrationSettings()
    gateset = gateset if gateset is not None else CalibratedGateSet()
    experiment = _Experiment(model, settings, rng, gateset)
    experiment.logger.calibration_step("iSWAP length and detuning")

    length = model.durations.iswap
    detuning = 0.0
    for round_index in range(settings.max_rounds):
        new_length = _repetition_scans(
            experiment,
            STEP_ISWAP,
            "length",
            length,
            length * settings.scan_window,
            lambda v, n, d=detuning: _sw_train(v, d, n),
            minimize=True,
        )
        coupling = np.pi / (2 * new_length)
        new_detuning = _repetition_scans(
            experiment,
            STEP_ISWAP,
            "detuning",
            detuning,
            settings.scan_window * 2 * coupling,
            lambda v, n, pulse_length=new_length: _sw_train(pulse_length, v, n),
            minimize=True,
        )

        converged = (
            abs(new_length - length) < settings.rel_tol * length
            and abs(new_detuning - detuning) < settings.rel_tol * coupling
        )
        length, detuning = new_length, new_detuning
        if converged and round_index > 0:
            break
    else:
        experiment.logger.warning(
            f"iSWAP length/detuning not converged after {settings.max_rounds} rounds",
            "calibration",
        )

    gateset.iswap = IswapCalibration(length, detuning)
    gateset.tracker.complete(STEP_ISWAP)
    return length, detuning


def calibrate_iswap_phases(
    model: DeviceModel,
    iswap_params: tuple[float, float] | None = None,
    settings: CalibrationSettings | None = None,
    gateset: CalibratedGateSet | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[float, float, float, float]:
    """
    Measure Σ = γ1 + γ2 and β with the Ramsey pairs S2/S3 and S4/S5 and
    choose frame shifts with δ2 = 0 and γ1 + γ2 − δ1 − δ2 = π − β.

    Args:
        model: Device to calibrate
        iswap_params: (length, detuning) of the SW pulse; taken from the
            gate set when omitted

    Returns:
        (Σ, β, δ1, δ2)

    Raises:
        PreconditionError: If the SW pulse has not been calibrated
        FitQualityError: If a cosine fit has R² < 0.9
    """
    settings = settings or CalibrationSettings()
    gateset = gateset if gateset is not None else CalibratedGateSet()
    if iswap_params is not None:
        gateset.iswap = IswapCalibration(*iswap_params)
        if not gateset.tracker.is_complete(STEP_ISWAP):
            gateset.tracker.complete(STEP_ISWAP)
    gateset.tracker.require(STEP_ISWAP_PHASES)
    experiment = _Experiment(model, settings, rng, gateset)
    experiment.logger.calibration_step("iSWAP single-qubit phases")

    sw = gateset.raw_iswap()
    sigma = experiment.ramsey_difference(STEP_ISWAP_PHASES, "sigma", [sw, sw], [])
    # Hidden qubit excited first: SW.SW then picks up 2γ3 − Σ
    excited = experiment.ramsey_difference(
        STEP_ISWAP_PHASES, "2*gamma3-sigma", [sw, sw], [], [sw, rx(np.pi)]
    )
    beta = wrap_half_turn((excited - sigma) / 2)
    delta1 = wrap_phase(sigma - np.pi + beta)
    delta2 = 0.0

    calibration = gateset.iswap
    calibration.sigma, calibration.beta = sigma, beta
    calibration.delta1, calibration.delta2 = delta1, delta2
    gateset.tracker.complete(STEP_ISWAP_PHASES)
    return sigma, beta, delta1, delta2


def calibrate_cphase_length(
    model: DeviceModel,
    gateset: CalibratedGateSet,
    settings: CalibrationSettings | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """
    CP length maximizing the excitation after CPⁿ.Rx(π).iSWAP.Rx(π), which
    prepares |11⟩ before the pulses.

    Raises:
        PreconditionError: If the iSWAP is not calibrated
        ScanWindowError: If a scan has no interior maximum
    """
    settings = settings or CalibrationSettings()
    gateset.tracker.require(STEP_CPHASE_LENGTH)
    experiment = _Experiment(model, settings, rng, gateset)
    experiment.logger.calibration_step("cPHASE length")

    prepare = [rx(np.pi), *gateset.expand("ISWAP"), rx(np.pi)]
    length = _repetition_scans(
        experiment,
        STEP_CPHASE_LENGTH,
        "length",
        model.durations.cphase,
        model.durations.cphase * settings.scan_window,
        lambda v, n: [*[CphasePulse(v, 0.0)] * n, *prepare],
        minimize=False,
    )
    gateset.cphase = CphaseCalibration(length)
    gateset.tracker.complete(STEP_CPHASE_LENGTH)
    return length


def _conditional_phase_scan(
    experiment: _Experiment,
    length: float,
    detunings: NDArray,
) -> NDArray:
    flip = ["ISWAP", "X180", "ISWAP", "X180"]
    flip_gates = experiment.gateset.sequence(flip)
    settings = experiment.settings
    theta = np.linspace(0, 2 * np.pi, settings.theta_points, endpoint=False)

    def phase(middle: list[Gate]) -> float:
        p = [
            experiment.measure([Rotation(np.pi / 2, t), *middle, rx(np.pi / 2)])
            for t in theta
        ]
        return fit_cosine(theta, np.array(p), STEP_CPHASE_FREQUENCY).phase

    reference = phase(flip_gates)
    return np.array(
        [
            wrap_phase(
                phase([CphasePulse(length, d), *flip_gates, CphasePulse(length, d)])
                - reference
            )
            for d in detunings
        ]
    )


def _solve_for_pi(
    step: str,
    detunings: NDArray,
    phases: NDArray,
    center: float,
    scale: float,
) -> tuple[float, float]:
    u = (detunings - center) / scale
    unwrapped = np.unwrap(phases)
    slope, intercept = np.polyfit(u, unwrapped, 1)
    residual = unwrapped - (slope * u + intercept)
    rms = float(np.sqrt(np.mean(residual**2)))
    scan = {"parameter": detunings.tolist(), "phase": phases.tolist()}
    if rms > cc.MAX_FREQUENCY_FIT_RMS or abs(slope) < 1e-12:
        raise FitQualityError(step, rms, cc.MAX_FREQUENCY_FIT_RMS, scan)

    # Solution of slope·u + intercept = π (mod 2π) nearest the scan centre
    turns = int(np.round((intercept - np.pi) / (2 * np.pi)))
    best = min(
        ((np.pi + 2 * np.pi * m - intercept) / slope for m in range(turns - 1, turns + 2)),
        key=abs,
    )
    target = float(center + best * scale)
    if not detunings[0] <= target <= detunings[-1]:
        raise ScanWindowError(step, "detuning", (float(detunings[0]), float(detunings[-1])))
    return target, rms


def calibrate_cphase_frequency(
    model: DeviceModel,
    gateset: CalibratedGateSet,
    settings: CalibrationSettings | None = None,
    rng: np.random.Generator | None = None,
) -> float:
    """
    Detuning at which the conditional phase δ = γ11 − γ01 − γ10 equals π.

    δ(Δ) is measured with the spin-echo pair S7/S8 (CP.FLIP.CP against FLIP)
    over the scan window, fitted by a straight line and solved for π. A
    second pass over a narrower window around the first solution refines it.

    Raises:
        PreconditionError: If the CP length is not calibrated
        FitQualityError: If the linear fit residual exceeds 0.05 rad
        ScanWindowError: If the solution lies outside the scan
    """
    settings = settings or CalibrationSettings()
    gateset.tracker.require(STEP_CPHASE_FREQUENCY)
    experiment = _Experiment(model, settings, rng, gateset)
    experiment.logger.calibration_step("cPHASE frequency")

    calibration = gateset.cphase
    coupling = np.pi / calibration.length
    center = calibration.detuning
    half = settings.scan_window * 2 * coupling
    for pass_index in range(2):
        detunings = _linspace(center, half, settings.scan_points)
        phases = _conditional_phase_scan(experiment, calibration.length, detunings)
        center, rms = _solve_for_pi(
            STEP_CPHASE_FREQUENCY, detunings, phases, center, coupling
        )
        gateset.fit_reports.append(
            FitReport(
                STEP_CPHASE_FREQUENCY,
                f"detuning(pass={pass_index + 1})",
                center,
                rms,
                {"parameter": detunings.tolist(), "phase": phases.tolist()},
            )
        )
        experiment.logger.scan_completed(STEP_CPHASE_FREQUENCY, "detuning", center)
        half /= 5

    calibration.detuning = center
    calibration.conditional_phase = float(
        _conditional_phase_scan(experiment, calibration.length, np.array([center]))[0]
    )
    gateset.tracker.complete(STEP_CPHASE_FREQUENCY)
    return center


def calibrate_cphase_single_phases(
    model: DeviceModel,
    gateset: CalibratedGateSet,
    settings: CalibrationSettings | None = None,
    rng: np.random.Generator | None = None,
) -> tuple[float, float]:
    """
    Measure γ01 (Ramsey S9/S10) and γ10 (SW-sandwiched S11/S12) and store
    them as the frame corrections applied after every CP pulse.

    Returns:
        (γ01 shift, γ10 shift)
    """
    settings = settings or CalibrationSettings()
    gateset.tracker.require(STEP_CPHASE_PHASES)
    experiment = _Experiment(model, settings, rng, gateset)
    experiment.logger.calibration_step("cPHASE single-qubit phases")

    calibration = gateset.cphase
    cp = CphasePulse(calibration.length, calibration.detuning)
    sw = gateset.raw_iswap()
    gamma01 = experiment.ramsey_difference(STEP_CPHASE_PHASES, "gamma01", [cp], [])
    gamma10 = experiment.ramsey_difference(
        STEP_CPHASE_PHASES, "gamma10", [sw, cp, sw], [sw, sw]
    )
    calibration.gamma01, calibration.gamma10 = gamma01, gamma10
    gateset.tracker.complete(STEP_CPHASE_PHASES)
    return gamma01, gamma10


def full_tuneup(
    model: DeviceModel,
    settings: CalibrationSettings | None = None,
    rng: np.random.Generator | None = None,
) -> CalibratedGateSet:
    """Run all five tune-up steps in order and return the calibrated gate set."""
    settings = settings or CalibrationSettings()
    gateset = CalibratedGateSet()
    calibrate_iswap(model, settings, gateset, rng)
    calibrate_iswap_phases(model, None, settings, gateset, rng)
    calibrate_cphase_length(model, gateset, settings, rng)
    calibrate_cphase_frequency(model, gateset, settings, rng)
    calibrate_cphase_single_phases(model, gateset, settings, rng)

    summary = (
        f"Σ={gateset.iswap.sigma:.4f}, β={gateset.iswap.beta:.4f}, "
        f"δ={gateset.cphase.conditional_phase:.4f}, "
        f"γ01={gateset.cphase.gamma01:.4f}, γ10={gateset.cphase.gamma10:.4f}"
    )
    get_logger().tuneup_completed(summary)
    return gateset
