"""
Quantum Volume Module

Error-budget estimate of the quantum volume of hidden-qubit grids: the mean
number of time steps needed for one layer of random pairs sets the
achievable depth ε/(N·n_s·Γτ), clamped by the qubit count.
"""

import math
from collections.abc import Iterable, Sequence
from dataclasses import asdict, dataclass
from functools import lru_cache
from typing import Any

import numpy as np

from hidden_qubit import config_constants as cc
from hidden_qubit.config import QvolumeConfig
from hidden_qubit.config_validator import ConfigValidator
from hidden_qubit.logger import get_logger
from hidden_qubit.routing import layer_cost, sample_pairing
from hidden_qubit.topology import GridTopology, topology_metrics


@dataclass(frozen=True)
class QvConfig:
    """
    Attributes:
        gamma_tau: Error probability per qubit per two-qubit gate duration
            (hidden qubits in differential mode)
        gamma_c_tau: Error probability of control qubits; enables the
            differential mode when set
        epsilon: Total error budget
        samples: Random pairings averaged per grid
        seed: Seed of the per-sample random streams
    """

    gamma_tau: float
    gamma_c_tau: float | None = None
    epsilon: float = cc.DEFAULT_EPSILON
    samples: int = cc.DEFAULT_QV_SAMPLES
    seed: int = cc.DEFAULT_SEED

    def __post_init__(self):
        validator = ConfigValidator()
        validator.validate_non_negative("gamma_tau", self.gamma_tau)
        if self.gamma_c_tau is not None:
            validator.validate_non_negative("gamma_c_tau", self.gamma_c_tau)
        validator.validate_positive("epsilon", self.epsilon)
        validator.validate_count("samples", self.samples)
        validator.validate_seed(self.seed)

    @property
    def differential(self) -> bool:
        return self.gamma_c_tau is not None


def configs_from_settings(settings: QvolumeConfig, seed: int) -> list[QvConfig]:
    """One uniform configuration per Γτ preset, plus the differential one."""
    configs = [
        QvConfig(g, None, settings.epsilon, settings.samples, seed)
        for g in settings.gamma_taus
    ]
    if settings.differential:
        configs.append(
            QvConfig(0.0, settings.gamma_c_tau, settings.epsilon, settings.samples, seed)
        )
    return configs


@dataclass(frozen=True)
class QvResult:
    log2_vq: float
    d: float
    n_s_mean: float
    n_g_mean: float
    gamma_tau: float


@lru_cache(maxsize=256)
def _mean_layer_cost(k: int, h: int, samples: int, seed: int) -> tuple[float, float]:
    topo = GridTopology(k, h)
    streams = np.random.SeedSequence(seed).spawn(samples)
    n_g_total = n_s_total = 0
    for stream in streams:
        pairing = sample_pairing(topo, np.random.default_rng(stream), allow_idle=True)
        n_g, n_s, _ = layer_cost(pairing, topo)
        n_g_total += n_g
        n_s_total += n_s
    return n_s_total / samples, n_g_total / samples


def effective_gamma_tau(topo: GridTopology, cfg: QvConfig) -> float:
    """Mean error probability per qubit and time step: (N_c Γ^(c) + N_h Γ)τ / N."""
    if not cfg.differential:
        return cfg.gamma_tau
    return (topo.sites * cfg.gamma_c_tau + topo.n_hidden * cfg.gamma_tau) / topo.n_qubits


def quantum_volume(topo: GridTopology, cfg: QvConfig) -> QvResult:
    """
    log₂V_Q = min(ε / (N·n_s·Γτ), N), with N·Γτ replaced by
    (N_c Γ^(c) + N_h Γ)τ in differential mode.

    n_s is averaged over ``cfg.samples`` random pairings, each drawn from
    its own stream spawned from ``cfg.seed``.
    """
    n_s_mean, n_g_mean = _mean_layer_cost(topo.k, topo.h, cfg.samples, cfg.seed)
    gamma = effective_gamma_tau(topo, cfg)
    denominator = topo.n_qubits * n_s_mean * gamma
    d = cfg.epsilon / denominator if denominator > 0 else math.inf
    return QvResult(min(d, float(topo.n_qubits)), d, n_s_mean, n_g_mean, gamma)


@dataclass(frozen=True)
class QvRow:
    k: int
    h: int
    control_lines: int
    N: int
    gamma_tau: float
    n_s_mean: float
    n_g_mean: float
    log2_vq: float

    def to_dict(self) -> dict[str, Any]:
        return asdict(self)


def qv_map(grids: Iterable[tuple[int, int]], cfgs: Sequence[QvConfig]) -> list[QvRow]:
    """
    One row per (grid, configuration). In differential mode the gamma_tau
    column holds the effective per-qubit rate of that grid.
    """
    logger = get_logger()
    rows = []
    for k, h in grids:
        topo = GridTopology(k, h)
        lines = topology_metrics(topo).control_lines
        for cfg in cfgs:
            result = quantum_volume(topo, cfg)
            logger.qv_point(k, h, result.gamma_tau, result.log2_vq)
            rows.append(
                QvRow(
                    k,
                    h,
                    lines,
                    topo.n_qubits,
                    result.gamma_tau,
                    result.n_s_mean,
                    result.n_g_mean,
                    result.log2_vq,
                )
            )
    return rows


def best_h_by_budget(rows: Iterable[QvRow], budget: int) -> int | None:
    """h of the largest log₂V_Q among rows within the control-line budget (ties: smaller h)."""
    affordable = [row for row in rows if row.control_lines <= budget]
    if not affordable:
        return None
    return max(affordable, key=lambda row: (row.log2_vq, -row.h)).h


def advantage_budgets(rows: Sequence[QvRow]) -> list[int]:
    """Control-line budgets of the table at which some h > 0 grid is best."""
    budgets = sorted({row.control_lines for row in rows})
    return [b for b in budgets if (best_h_by_budget(rows, b) or 0) > 0]
