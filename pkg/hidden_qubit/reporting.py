"""
Reporting Module

CSV and JSON writers for every table the toolkit emits, each with a matching
parser. CSV output is UTF-8, comma separated with a header row; floats are
written with ``repr`` so identical inputs give identical bytes.
"""

import csv
import io
import json
import sys
from collections.abc import Iterable, Mapping, Sequence
from pathlib import Path
from typing import Any

import numpy as np

from hidden_qubit.calibration import FitReport
from hidden_qubit.config_constants import QV_CSV_HEADER
from hidden_qubit.controllability import Claim, ReachabilityReport
from hidden_qubit.exceptions import ValidationError
from hidden_qubit.qcore import PAULI_LABELS, PTM_DIM, ProcessMatrix
from hidden_qubit.qvolume import QvRow
from hidden_qubit.routing import Operation, RoutingPlan

SCAN_HEADER: tuple[str, ...] = ("parameter", "p_e")
FIDELITY_HEADER: tuple[str, ...] = ("gate", "before", "after", "ground_truth")
CLAIM_HEADER: tuple[str, ...] = ("name", "expected", "observed", "passed")
FIT_HEADER: tuple[str, ...] = ("step", "parameter", "estimate", "metric")
REACHABILITY_HEADER: tuple[str, ...] = ("operator", "witness")
PLAN_HEADER: tuple[str, ...] = ("layer", "kind", "slot_a", "slot_b")


def _format(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float | np.floating):
        return repr(float(value))
    return str(value)


def _write_rows(header: Sequence[str], rows: Iterable[Sequence[Any]]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow([_format(v) for v in row])
    return buffer.getvalue()


def _read_rows(text: str, header: Sequence[str]) -> list[list[str]]:
    reader = csv.reader(io.StringIO(text))
    try:
        found = next(reader)
    except StopIteration as e:
        raise ValidationError("Empty CSV input", "csv") from e
    if tuple(found) != tuple(header):
        raise ValidationError(
            f"Unexpected CSV header {found}, expected {list(header)}", "csv"
        )
    rows = [row for row in reader if row]
    if any(len(row) != len(header) for row in rows):
        raise ValidationError("CSV row with wrong number of columns", "csv")
    return rows


def dump_json(data: Any) -> str:
    return json.dumps(data, sort_keys=True, indent=2) + "\n"


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise ValidationError(f"Malformed JSON: {e}", "json") from e


def write_output(text: str, out: str | Path | None = None) -> None:
    """Write to a file, or to stdout when no path is given."""
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


# QV tables


def qv_table_csv(rows: Iterable[QvRow]) -> str:
    return _write_rows(
        QV_CSV_HEADER, ([getattr(row, name) for name in QV_CSV_HEADER] for row in rows)
    )


def parse_qv_table_csv(text: str) -> list[QvRow]:
    try:
        return [
            QvRow(
                int(k),
                int(h),
                int(lines),
                int(n),
                float(gamma),
                float(n_s),
                float(n_g),
                float(log2_vq),
            )
            for k, h, lines, n, gamma, n_s, n_g, log2_vq in _read_rows(text, QV_CSV_HEADER)
        ]
    except ValueError as e:
        raise ValidationError(f"Invalid QV table value: {e}", "csv") from e


def qv_table_json(rows: Iterable[QvRow]) -> str:
    return dump_json([row.to_dict() for row in rows])


def parse_qv_table_json(text: str) -> list[QvRow]:
    try:
        return [QvRow(**row) for row in load_json(text)]
    except TypeError as e:
        raise ValidationError(f"Invalid QV table: {e}", "json") from e


# Calibration scans


def scan_csv(scan: Mapping[str, Sequence[float]]) -> str:
    return _write_rows(SCAN_HEADER, zip(scan["parameter"], scan["p_e"], strict=True))


def parse_scan_csv(text: str) -> dict[str, list[float]]:
    rows = _read_rows(text, SCAN_HEADER)
    try:
        return {
            "parameter": [float(r[0]) for r in rows],
            "p_e": [float(r[1]) for r in rows],
        }
    except ValueError as e:
        raise ValidationError(f"Invalid scan value: {e}", "csv") from e


# Process matrices


def ptm_csv(ptm: ProcessMatrix) -> str:
    ptm = np.asarray(ptm, dtype=float)
    if ptm.shape != (PTM_DIM, PTM_DIM):
        raise ValidationError(f"PTM must be 16×16, got {ptm.shape}", "ptm")
    header = ("", *PAULI_LABELS)
    return _write_rows(header, ([label, *row] for label, row in zip(PAULI_LABELS, ptm, strict=True)))


def parse_ptm_csv(text: str) -> ProcessMatrix:
    rows = _read_rows(text, ("", *PAULI_LABELS))
    if [r[0] for r in rows] != list(PAULI_LABELS):
        raise ValidationError("PTM rows must be labelled in Pauli order", "csv")
    try:
        return np.array([[float(v) for v in r[1:]] for r in rows])
    except ValueError as e:
        raise ValidationError(f"Invalid PTM value: {e}", "csv") from e


# Fidelity tables


def fidelity_csv(table: Mapping[str, Mapping[str, float]]) -> str:
    return _write_rows(
        FIDELITY_HEADER,
        ([gate, *(values[c] for c in FIDELITY_HEADER[1:])] for gate, values in table.items()),
    )


def parse_fidelity_csv(text: str) -> dict[str, dict[str, float]]:
    try:
        return {
            row[0]: {c: float(v) for c, v in zip(FIDELITY_HEADER[1:], row[1:], strict=True)}
            for row in _read_rows(text, FIDELITY_HEADER)
        }
    except ValueError as e:
        raise ValidationError(f"Invalid fidelity value: {e}", "csv") from e


# Claim reports


def claims_csv(claims: Iterable[Claim]) -> str:
    return _write_rows(
        CLAIM_HEADER, ((c.name, c.expected, c.observed, c.passed) for c in claims)
    )


def parse_claims_csv(text: str) -> list[Claim]:
    claims = []
    for name, expected, observed, passed in _read_rows(text, CLAIM_HEADER):
        if passed not in ("true", "false"):
            raise ValidationError(f"Invalid passed flag '{passed}'", "csv")
        claims.append(Claim(name, expected, observed, passed == "true"))
    return claims


def claims_json(claims: Iterable[Claim]) -> str:
    return dump_json([c.to_dict() for c in claims])


def parse_claims_json(text: str) -> list[Claim]:
    try:
        return [Claim(**c) for c in load_json(text)]
    except TypeError as e:
        raise ValidationError(f"Invalid claim report: {e}", "json") from e


# Fit reports


def fit_reports_csv(reports: Iterable[FitReport]) -> str:
    return _write_rows(
        FIT_HEADER, ((r.step, r.parameter, r.estimate, r.metric) for r in reports)
    )


def parse_fit_reports_csv(text: str) -> list[FitReport]:
    try:
        return [
            FitReport(step, parameter, float(estimate), float(metric))
            for step, parameter, estimate, metric in _read_rows(text, FIT_HEADER)
        ]
    except ValueError as e:
        raise ValidationError(f"Invalid fit report value: {e}", "csv") from e


# Reachability reports


def reachability_csv(report: ReachabilityReport) -> str:
    rows = []
    for label in sorted(report.witness_sequences):
        rows.append((label, ".".join(report.witness_sequences[label])))
    return _write_rows(REACHABILITY_HEADER, rows)


def parse_reachability_csv(text: str) -> dict[str, tuple[str, ...]]:
    return {
        label: tuple(witness.split(".")) if witness else ()
        for label, witness in _read_rows(text, REACHABILITY_HEADER)
    }


# Routing plans


def plan_csv(plan: RoutingPlan) -> str:
    return _write_rows(
        PLAN_HEADER,
        (
            (index, op.kind, op.slot_a, op.slot_b)
            for index, layer in enumerate(plan.layers)
            for op in layer
        ),
    )


def parse_plan_csv(text: str) -> RoutingPlan:
    layers: dict[int, list[Operation]] = {}
    try:
        for index, kind, slot_a, slot_b in _read_rows(text, PLAN_HEADER):
            layers.setdefault(int(index), []).append(Operation(kind, int(slot_a), int(slot_b)))
    except ValueError as e:
        raise ValidationError(f"Invalid plan value: {e}", "csv") from e
    return RoutingPlan(tuple(tuple(layers[i]) for i in sorted(layers)))
