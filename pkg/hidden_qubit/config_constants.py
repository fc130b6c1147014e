"""
Configuration Constants Module

Defines configuration section names, field names and numeric defaults so that
tolerances and scan settings live in one place instead of as magic numbers.
"""

from typing import Final

# Configuration section names
RUN_SECTION: Final[str] = "run"
DEVICE_SECTION: Final[str] = "device"
CALIBRATION_SECTION: Final[str] = "calibration"
TOMOGRAPHY_SECTION: Final[str] = "tomography"
QVOLUME_SECTION: Final[str] = "qvolume"
CONTROLLABILITY_SECTION: Final[str] = "controllability"

ALL_SECTIONS: Final[list[str]] = [
    RUN_SECTION,
    DEVICE_SECTION,
    CALIBRATION_SECTION,
    TOMOGRAPHY_SECTION,
    QVOLUME_SECTION,
    CONTROLLABILITY_SECTION,
]

# Output formats
FORMAT_JSON: Final[str] = "json"
FORMAT_CSV: Final[str] = "csv"
OUTPUT_FORMATS: Final[tuple[str, ...]] = (FORMAT_JSON, FORMAT_CSV)

DEFAULT_SEED: Final[int] = 20240501
MAX_SEED: Final[int] = 2**64

# Numerical core tolerances
UNITARY_TOL: Final[float] = 1e-10
CPTP_TOL: Final[float] = 1e-8
CPTP_MAX_ITER: Final[int] = 10_000
RANK_TOL: Final[float] = 1e-9

# Reachability
DEFAULT_MAX_DEPTH: Final[int] = 6
FULL_OPERATOR_SPAN: Final[int] = 16
SU4_DIMENSION: Final[int] = 15

# Device defaults (SI units; couplings in rad/s)
DEFAULT_T1_CONTROL: Final[float] = 30e-6
DEFAULT_T2_CONTROL: Final[float] = 30e-6
DEFAULT_T1_HIDDEN: Final[float] = 60e-6
DEFAULT_T2_HIDDEN: Final[float] = 20e-6
DEFAULT_SINGLE_QUBIT_DURATION: Final[float] = 50e-9
DEFAULT_TWO_QUBIT_DURATION: Final[float] = 200e-9
# Transfer and 2π times land at ≈192 ns, inside the ±20 % scan window
DEFAULT_G_ISWAP: Final[float] = 2 * 3.141592653589793 * 1.3e6
DEFAULT_G_CPHASE: Final[float] = 2 * 3.141592653589793 * 2.6e6
DEFAULT_GAMMA1: Final[float] = 0.3
DEFAULT_GAMMA2: Final[float] = 0.7
DEFAULT_BETA: Final[float] = 0.05
DEFAULT_GAMMA01: Final[float] = 0.2
DEFAULT_GAMMA10: Final[float] = -0.15
DEFAULT_GAMMA11: Final[float] = 3.141592653589793 + 0.3

# Calibration defaults
SCAN_POINTS: Final[int] = 41
SCAN_WINDOW: Final[float] = 0.2
THETA_POINTS: Final[int] = 16
QUADRATIC_FIT_POINTS: Final[int] = 7
REPETITIONS: Final[tuple[int, ...]] = (1, 3, 5)
MAX_CALIBRATION_ROUNDS: Final[int] = 5
CALIBRATION_REL_TOL: Final[float] = 1e-3
MIN_COSINE_R2: Final[float] = 0.9
MAX_FREQUENCY_FIT_RMS: Final[float] = 0.05

# Tomography defaults
QPT_IMPROVEMENT_TOL: Final[float] = 1e-10
QPT_MAX_ITER: Final[int] = 5_000
SC_LAMBDA: Final[float] = 0.1
SC_MAX_ITER: Final[int] = 100
SC_RESIDUAL_FLOOR: Final[float] = 1e-8
GAUGE_GRID_POINTS: Final[int] = 64

# Quantum volume defaults
GAMMA_TAU_PRESETS: Final[tuple[float, ...]] = (0.004, 4e-4, 4e-6)
DIFFERENTIAL_GAMMA_C_TAU: Final[float] = 4e-6
DEFAULT_EPSILON: Final[float] = 1.0
DEFAULT_QV_SAMPLES: Final[int] = 200
EXACT_ASSIGNMENT_MAX_K: Final[int] = 4
HEURISTIC_CANDIDATES: Final[int] = 12
EXACT_ASSIGNMENT_NODE_LIMIT: Final[int] = 200_000
DEFAULT_QV_GRIDS: Final[tuple[tuple[int, int], ...]] = (
    (2, 0), (3, 0), (4, 0), (5, 0), (6, 0), (7, 0), (8, 0),
    (2, 1), (3, 1), (4, 1), (5, 1), (6, 1),
    (2, 2), (3, 2), (4, 2), (5, 2),
    (2, 3), (3, 3), (4, 3),
    (2, 4), (3, 4), (4, 4),
)  # fmt: skip

QV_CSV_HEADER: Final[tuple[str, ...]] = (
    "k",
    "h",
    "control_lines",
    "N",
    "gamma_tau",
    "n_s_mean",
    "n_g_mean",
    "log2_vq",
)
