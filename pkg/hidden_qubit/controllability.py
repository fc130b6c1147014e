"""
Controllability Module

Machine checks for the universality and tomographic-completeness statements
about a control qubit coupled to a hidden qubit: Lie-algebra closure of
Hamiltonian generators and reachability of measurement operators under
conjugation by gate words.
"""

import json
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from numpy.typing import NDArray

from hidden_qubit import gates
from hidden_qubit.config_constants import (
    DEFAULT_MAX_DEPTH,
    FULL_OPERATOR_SPAN,
    RANK_TOL,
    SU4_DIMENSION,
)
from hidden_qubit.exceptions import ValidationError
from hidden_qubit.logger import get_logger
from hidden_qubit.qcore import (
    PAULI_LABELS,
    ComplexMatrix,
    PauliOperator,
    is_hermitian,
    pauli_basis,
    validate_unitary,
)


@dataclass(frozen=True)
class HermitianGenerator:
    """Traceless Hermitian 4×4 generator with a readable label."""

    matrix: ComplexMatrix = field(compare=False)
    label: str = ""

    def __post_init__(self):
        matrix = np.asarray(self.matrix, dtype=complex)
        if matrix.shape != (4, 4):
            raise ValidationError(
                f"Generator '{self.label}' must be 4×4, got {matrix.shape}", "matrix"
            )
        if not is_hermitian(matrix, 1e-12):
            raise ValidationError(f"Generator '{self.label}' is not Hermitian", "matrix")
        if abs(np.trace(matrix)) > 1e-12:
            raise ValidationError(f"Generator '{self.label}' is not traceless", "matrix")
        object.__setattr__(self, "matrix", matrix)


def pauli_generator(label: str) -> HermitianGenerator:
    return HermitianGenerator(PauliOperator(label).matrix, label)


def control_generators() -> list[HermitianGenerator]:
    """σ_i ⊗ 1 for i ∈ {x, y, z}: drives available on the control qubit."""
    return [pauli_generator(a + "I") for a in "XYZ"]


def hidden_generators() -> list[HermitianGenerator]:
    return [pauli_generator("I" + b) for b in "XYZ"]


def zz_generator() -> HermitianGenerator:
    """cPHASE-type interaction σz⊗σz."""
    return pauli_generator("ZZ")


def exchange_generator() -> HermitianGenerator:
    """iSWAP-type interaction σx⊗σx + σy⊗σy."""
    basis = pauli_basis()
    return HermitianGenerator(basis[5] + basis[10], "XX+YY")


def heisenberg_generator() -> HermitianGenerator:
    """SWAP-type interaction σx⊗σx + σy⊗σy + σz⊗σz."""
    basis = pauli_basis()
    return HermitianGenerator(basis[5] + basis[10] + basis[15], "XX+YY+ZZ")


def _to_coefficients(matrix: ComplexMatrix) -> NDArray[np.float64]:
    return np.einsum("iab,ba->i", pauli_basis(), matrix).real / 4


def _from_coefficients(coefficients: NDArray[np.float64]) -> ComplexMatrix:
    return np.einsum("i,iab->ab", coefficients, pauli_basis())


class _SpanTracker:
    """Orthonormal basis of a real subspace grown one vector at a time."""

    def __init__(self, dimension: int, tol: float = RANK_TOL):
        self.tol = tol
        self.vectors = np.zeros((0, dimension))

    def __len__(self) -> int:
        return len(self.vectors)

    def residual(self, vector: NDArray[np.float64]) -> NDArray[np.float64]:
        norm = np.linalg.norm(vector)
        if norm < self.tol:
            return np.zeros_like(vector)
        residual = vector / norm
        # Two Gram–Schmidt passes keep the basis orthonormal to machine precision
        for _ in range(2):
            residual = residual - self.vectors.T @ (self.vectors @ residual)
        return residual

    def add(self, vector: NDArray[np.float64]) -> bool:
        residual = self.residual(vector)
        norm = np.linalg.norm(residual)
        if norm < self.tol:
            return False
        self.vectors = np.vstack([self.vectors, residual / norm])
        return True


def lie_closure(
    generators: Sequence[HermitianGenerator],
    max_dim: int = SU4_DIMENSION,
    tol: float = RANK_TOL,
) -> tuple[int, list[HermitianGenerator]]:
    """
    Smallest real Lie algebra containing the generators.

    Generators are normalized, then nested commutators i[A, B] of basis
    elements are added whenever they leave the current span, until no pair
    produces a new direction or max_dim is reached.

    Args:
        generators: Hermitian traceless generators
        max_dim: Upper bound on the algebra dimension (≤ 15 for su(4))
        tol: Rank threshold

    Returns:
        (dimension, orthonormal basis of the algebra)
    """
    if max_dim > SU4_DIMENSION:
        raise ValidationError(
            f"max_dim must not exceed {SU4_DIMENSION}, got {max_dim}", "max_dim"
        )

    span = _SpanTracker(16, tol)
    for generator in generators:
        span.add(_to_coefficients(generator.matrix))
        if len(span) >= max_dim:
            break

    index = 0
    while index < len(span) and len(span) < max_dim:
        a = _from_coefficients(span.vectors[index])
        for other in range(index):
            b = _from_coefficients(span.vectors[other])
            span.add(_to_coefficients(1j * (a @ b - b @ a)))
            if len(span) >= max_dim:
                break
        index += 1

    basis = [
        HermitianGenerator(_from_coefficients(vector), f"L{i}")
        for i, vector in enumerate(span.vectors)
    ]
    return len(span), basis


def is_fully_controllable(generators: Sequence[HermitianGenerator]) -> bool:
    dimension, _ = lie_closure(generators)
    return dimension == SU4_DIMENSION


@dataclass
class ReachabilityReport:
    """
    Result of a measurement-operator reachability search.

    ``reachable`` holds unsigned Pauli labels reached exactly by some word;
    ``witness_sequences`` maps each signed Pauli (e.g. ``"-XZ"``) to the
    shortest gate word producing it, written last-applied first.
    """

    reachable: set[str]
    span_dimension: int
    witness_sequences: dict[str, tuple[str, ...]]
    unreachable: list[str]
    method: str
    depth_reached: int

    @property
    def complete(self) -> bool:
        return self.span_dimension == FULL_OPERATOR_SPAN

    def to_dict(self) -> dict:
        return {
            "reachable": sorted(self.reachable),
            "span_dimension": self.span_dimension,
            "witness_sequences": {
                key: list(value) for key, value in sorted(self.witness_sequences.items())
            },
            "unreachable": self.unreachable,
            "method": self.method,
            "depth_reached": self.depth_reached,
        }


def conjugate_pauli(unitary: ComplexMatrix, pauli: PauliOperator) -> PauliOperator | None:
    """U† P U as a signed Pauli, or None when U is not Clifford on P."""
    image = unitary.conj().T @ pauli.matrix @ unitary
    coefficients = np.einsum("iab,ba->i", pauli_basis(), image) / 4
    index = int(np.argmax(np.abs(coefficients)))
    value = coefficients[index]
    if abs(abs(value) - 1) > 1e-9 or abs(value.imag) > 1e-9:
        return None
    return PauliOperator(PAULI_LABELS[index], 1 if value.real > 0 else -1)


def _clifford_table(
    unitaries: Sequence[ComplexMatrix],
) -> list[dict[tuple[str, int], tuple[str, int]]] | None:
    tables = []
    for unitary in unitaries:
        table = {}
        for label in PAULI_LABELS:
            for sign in (1, -1):
                image = conjugate_pauli(unitary, PauliOperator(label, sign))
                if image is None:
                    return None
                table[(label, sign)] = (image.label, image.sign)
        tables.append(table)
    return tables


def _clifford_reachability(
    tables: list[dict[tuple[str, int], tuple[str, int]]],
    names: Sequence[str],
    native: Sequence[PauliOperator],
    max_depth: int,
) -> tuple[dict[tuple[str, int], tuple[str, ...]], int]:
    witnesses: dict[tuple[str, int], tuple[str, ...]] = {}
    queue: deque[tuple[tuple[str, int], tuple[str, ...]]] = deque()
    for operator in native:
        state = (operator.label, operator.sign)
        if state not in witnesses:
            witnesses[state] = ()
            queue.append((state, ()))

    depth_reached = 0
    while queue:
        state, word = queue.popleft()
        if len(word) >= max_depth:
            continue
        if len({label for label, _ in witnesses}) == FULL_OPERATOR_SPAN:
            break
        for table, name in zip(tables, names, strict=True):
            image = table[state]
            if image not in witnesses:
                # Prepending an earlier gate g maps O to g† O g
                witnesses[image] = (*word, name)
                depth_reached = max(depth_reached, len(word) + 1)
                queue.append((image, witnesses[image]))
    return witnesses, depth_reached


def _span_reachability(
    unitaries: Sequence[ComplexMatrix],
    names: Sequence[str],
    native: Sequence[PauliOperator],
    max_depth: int,
) -> tuple[_SpanTracker, dict[tuple[str, int], tuple[str, ...]], int]:
    span = _SpanTracker(16)
    witnesses: dict[tuple[str, int], tuple[str, ...]] = {}
    seen: set[bytes] = set()

    def record(vector: NDArray[np.float64], word: tuple[str, ...]) -> bool:
        key = np.round(vector, 9).tobytes()
        if key in seen:
            return False
        seen.add(key)
        span.add(vector)
        index = int(np.argmax(np.abs(vector)))
        if abs(abs(vector[index]) - 1) < 1e-9 and np.sum(np.abs(vector)) < 1 + 1e-9:
            state = (PAULI_LABELS[index], 1 if vector[index] > 0 else -1)
            witnesses.setdefault(state, word)
        return True

    frontier: list[tuple[ComplexMatrix, tuple[str, ...]]] = []
    for operator in native:
        if record(_to_coefficients(operator.matrix), ()):
            frontier.append((operator.matrix, ()))

    depth_reached = 0
    for depth in range(1, max_depth + 1):
        if len(span) == FULL_OPERATOR_SPAN or not frontier:
            break
        next_frontier = []
        for operator, word in frontier:
            for unitary, name in zip(unitaries, names, strict=True):
                image = unitary.conj().T @ operator @ unitary
                new_word = (*word, name)
                if record(_to_coefficients(image), new_word):
                    next_frontier.append((image, new_word))
                    depth_reached = depth
        frontier = next_frontier
    return span, witnesses, depth_reached


def measurement_reachability(
    unitaries: Sequence[ComplexMatrix],
    native: Sequence[PauliOperator],
    max_depth: int = DEFAULT_MAX_DEPTH,
    names: Sequence[str] | None = None,
    method: str = "auto",
) -> ReachabilityReport:
    """
    Explore the operators U† M U reachable from native observables M.

    Words U = g_{i1}…g_{im} with m ≤ max_depth are explored breadth first.
    Clifford gate sets are tracked exactly as signed Pauli labels; otherwise
    the real linear span of the reached operators is grown by rank updates.
    The search stops as soon as the span covers all 16 Pauli directions.

    Args:
        unitaries: 4×4 gate unitaries
        native: Natively measurable Pauli operators (non-empty)
        max_depth: Longest word explored
        names: Gate names used in witness sequences (default G0, G1, ...)
        method: "auto", "clifford" or "span"

    Returns:
        ReachabilityReport; an unsaturated span is reported, not raised

    Raises:
        ValidationError: If a gate is not unitary, native is empty or the
            Clifford method is forced on a non-Clifford set
    """
    if not native:
        raise ValidationError("At least one native operator is required", "native")
    unitaries = [validate_unitary(u) for u in unitaries]
    names = list(names) if names is not None else [f"G{i}" for i in range(len(unitaries))]
    if len(names) != len(unitaries):
        raise ValidationError("One name per gate is required", "names")

    tables = _clifford_table(unitaries) if method in ("auto", "clifford") else None
    if method == "clifford" and tables is None:
        raise ValidationError("Gate set is not Clifford", "method")

    if tables is not None:
        witnesses, depth_reached = _clifford_reachability(
            tables, names, native, max_depth
        )
        reachable = {label for label, _ in witnesses}
        span_dimension = len(reachable)
        unreachable = [label for label in PAULI_LABELS if label not in reachable]
        used = "clifford"
    else:
        span, witnesses, depth_reached = _span_reachability(
            unitaries, names, native, max_depth
        )
        reachable = {label for label, _ in witnesses}
        span_dimension = len(span)
        unit = np.eye(16)
        unreachable = [
            label
            for index, label in enumerate(PAULI_LABELS)
            if np.linalg.norm(span.residual(unit[index])) > 1e-6
        ]
        used = "span"

    return ReachabilityReport(
        reachable=reachable,
        span_dimension=span_dimension,
        witness_sequences={
            str(PauliOperator(label, sign)): word
            for (label, sign), word in witnesses.items()
        },
        unreachable=unreachable,
        method=used,
        depth_reached=depth_reached,
    )


HIDDEN_NATIVE: tuple[PauliOperator, ...] = (PauliOperator("II"), PauliOperator("ZI"))
FULL_NATIVE: tuple[PauliOperator, ...] = (
    PauliOperator("II"),
    PauliOperator("ZI"),
    PauliOperator("IZ"),
    PauliOperator("ZZ"),
)


def hidden_gate_set(*two_qubit: str) -> tuple[list[ComplexMatrix], list[str]]:
    """Control-qubit π/2 rotations plus the named two-qubit library gates."""
    names = ["RX_C", "RY_C", *two_qubit]
    return [gates.GATE_LIBRARY[name] for name in names], names


def verify_sqrt_swap_completeness(max_depth: int = 8) -> bool:
    """
    True iff √SWAP alone, and every pair from {cPHASE, iSWAP, SWAP}, make the
    hidden qubit fully measurable together with control-qubit rotations.
    """
    cases = [
        ("SQRT_SWAP",),
        ("CPHASE", "ISWAP"),
        ("CPHASE", "SWAP"),
        ("ISWAP", "SWAP"),
    ]
    for case in cases:
        unitaries, names = hidden_gate_set(*case)
        report = measurement_reachability(unitaries, HIDDEN_NATIVE, max_depth, names)
        if not report.complete:
            return False
    return True


@dataclass(frozen=True)
class Claim:
    """One verified statement of the controllability battery."""

    name: str
    expected: str
    observed: str
    passed: bool

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "expected": self.expected,
            "observed": self.observed,
            "passed": self.passed,
        }


def _universality_claim(
    name: str, generators: list[HermitianGenerator], expected: bool
) -> Claim:
    dimension, _ = lie_closure(generators)
    universal = dimension == SU4_DIMENSION
    return Claim(
        name,
        "universal" if expected else "not universal",
        f"dim {dimension}",
        universal == expected,
    )


def _reachability_claim(
    name: str,
    unitaries: list[ComplexMatrix],
    names: list[str],
    native: Sequence[PauliOperator],
    expected_complete: bool,
    max_depth: int,
) -> Claim:
    report = measurement_reachability(unitaries, native, max_depth, names)
    observed = f"span {report.span_dimension}"
    if report.unreachable:
        observed += f", missing {' '.join(report.unreachable)}"
    return Claim(
        name,
        "span 16" if expected_complete else "span < 16",
        observed,
        report.complete == expected_complete,
    )


def run_claim_battery(max_depth: int = DEFAULT_MAX_DEPTH) -> list[Claim]:
    """
    Verify every universality and measurability statement for the
    control+hidden pair.

    Returns:
        Claims in a fixed order; each carries expected and observed values
    """
    logger = get_logger()
    full = control_generators() + hidden_generators()
    hidden = control_generators()
    claims = [
        _universality_claim("full control + cPHASE-type", [*full, zz_generator()], True),
        _universality_claim(
            "full control + iSWAP-type", [*full, exchange_generator()], True
        ),
        _universality_claim(
            "full control + SWAP-type", [*full, heisenberg_generator()], True
        ),
        _universality_claim("hidden + cPHASE-type", [*hidden, zz_generator()], False),
        _universality_claim(
            "hidden + iSWAP-type", [*hidden, exchange_generator()], False
        ),
        _universality_claim(
            "hidden + cPHASE-type + iSWAP-type",
            [*hidden, zz_generator(), exchange_generator()],
            True,
        ),
        _universality_claim(
            "hidden + SWAP-type", [*hidden, heisenberg_generator()], True
        ),
    ]

    full_names = ["RX_C", "RY_C", "RX_H", "RY_H"]
    claims.append(
        _reachability_claim(
            "full control readout",
            [gates.GATE_LIBRARY[name] for name in full_names],
            full_names,
            FULL_NATIVE,
            True,
            max_depth,
        )
    )
    unitaries, names = hidden_gate_set("ISWAP", "CPHASE")
    claims.append(
        _reachability_claim(
            "hidden readout with iSWAP + cPHASE",
            unitaries,
            names,
            HIDDEN_NATIVE,
            True,
            max_depth,
        )
    )
    for gate in ("CPHASE", "ISWAP", "SWAP"):
        unitaries, names = hidden_gate_set(gate)
        claims.append(
            _reachability_claim(
                f"hidden readout with {gate} only",
                unitaries,
                names,
                HIDDEN_NATIVE,
                False,
                max_depth,
            )
        )
    sqrt_swap = verify_sqrt_swap_completeness(max(max_depth, 8))
    claims.append(
        Claim("√SWAP or any gate pair completes readout", "true", str(sqrt_swap).lower(), sqrt_swap)
    )

    for claim in claims:
        logger.claim_result(claim.name, claim.passed, claim.observed)
    return claims


def _parse_matrix(name: str, rows: object) -> ComplexMatrix:
    if not isinstance(rows, list) or len(rows) != 4:
        raise ValidationError(f"Gate '{name}' must have 4 rows", "gates")
    matrix = np.zeros((4, 4), dtype=complex)
    for i, row in enumerate(rows):
        if not isinstance(row, list) or len(row) != 4:
            raise ValidationError(f"Gate '{name}' row {i} must have 4 entries", "gates")
        for j, entry in enumerate(row):
            if isinstance(entry, list) and len(entry) == 2:
                matrix[i, j] = complex(float(entry[0]), float(entry[1]))
            elif isinstance(entry, int | float) and not isinstance(entry, bool):
                matrix[i, j] = entry
            else:
                raise ValidationError(
                    f"Gate '{name}' entry ({i},{j}) must be a number or [re, im]",
                    "gates",
                )
    return validate_unitary(matrix)


def load_gate_file(
    path: str | Path,
) -> tuple[list[ComplexMatrix], list[str], list[PauliOperator], int]:
    """
    Load a gate-set description for a reachability run.

    The JSON document holds ``gates`` (library names or a name → matrix
    mapping with ``[re, im]`` entries), optional ``native`` Pauli labels
    (default II, ZI) and optional ``max_depth``.

    Raises:
        ValidationError: If the file is malformed
    """
    try:
        with open(path, encoding="utf-8") as f:
            document = json.load(f)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Gate file {path} is not valid JSON: {e}", "gates") from e

    if not isinstance(document, dict) or "gates" not in document:
        raise ValidationError(f"Gate file {path} needs a 'gates' entry", "gates")

    raw_gates = document["gates"]
    if isinstance(raw_gates, list):
        unknown = [g for g in raw_gates if g not in gates.GATE_LIBRARY]
        if unknown:
            raise ValidationError(
                f"Unknown library gates: {', '.join(map(str, unknown))}. "
                f"Known: {', '.join(gates.GATE_LIBRARY)}",
                "gates",
            )
        names = list(raw_gates)
        unitaries = [gates.GATE_LIBRARY[name] for name in names]
    elif isinstance(raw_gates, dict):
        names = list(raw_gates)
        unitaries = [_parse_matrix(name, rows) for name, rows in raw_gates.items()]
    else:
        raise ValidationError("'gates' must be a list or an object", "gates")
    if not unitaries:
        raise ValidationError("Gate file defines no gates", "gates")

    labels = document.get("native", ["II", "ZI"])
    if not isinstance(labels, list) or not labels:
        raise ValidationError("'native' must be a non-empty list", "native")
    native = []
    for label in labels:
        text = str(label)
        sign = -1 if text.startswith("-") else 1
        native.append(PauliOperator(text.lstrip("+-"), sign))

    max_depth = document.get("max_depth", DEFAULT_MAX_DEPTH)
    if isinstance(max_depth, bool) or not isinstance(max_depth, int) or max_depth < 1:
        raise ValidationError("'max_depth' must be a positive integer", "max_depth")
    return unitaries, names, native, max_depth


__all__ = [
    "Claim",
    "HermitianGenerator",
    "ReachabilityReport",
    "conjugate_pauli",
    "is_fully_controllable",
    "lie_closure",
    "load_gate_file",
    "measurement_reachability",
    "run_claim_battery",
    "verify_sqrt_swap_completeness",
]
