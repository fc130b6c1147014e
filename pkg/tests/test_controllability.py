"""Test controllability and measurability functionality."""

import json

import numpy as np
import pytest

from hidden_qubit import gates
from hidden_qubit.controllability import (
    FULL_NATIVE,
    HIDDEN_NATIVE,
    HermitianGenerator,
    conjugate_pauli,
    control_generators,
    exchange_generator,
    heisenberg_generator,
    hidden_gate_set,
    hidden_generators,
    is_fully_controllable,
    lie_closure,
    load_gate_file,
    measurement_reachability,
    run_claim_battery,
    verify_sqrt_swap_completeness,
    zz_generator,
)
from hidden_qubit.exceptions import ValidationError
from hidden_qubit.qcore import PAULI_LABELS, PauliOperator, pauli_basis


def _sequence_unitary(word, library):
    unitary = np.eye(4, dtype=complex)
    for name in word:
        unitary = unitary @ library[name]
    return unitary


class TestLieClosure:
    """Test cases for Lie-algebra controllability."""

    def test_full_control_with_any_coupling(self):
        """Test full single-qubit control plus any coupling is universal."""
        local = control_generators() + hidden_generators()
        for coupling in (zz_generator(), exchange_generator(), heisenberg_generator()):
            assert is_fully_controllable([*local, coupling])

    def test_local_only_not_universal(self):
        """Test local drives alone span su(2) ⊕ su(2)."""
        dimension, basis = lie_closure(control_generators() + hidden_generators())
        assert dimension == 6
        assert len(basis) == 6

    def test_hidden_qubit_sets(self):
        """Test universality when only the control qubit is driven."""
        control = control_generators()
        assert not is_fully_controllable([*control, zz_generator()])
        assert not is_fully_controllable([*control, exchange_generator()])
        assert is_fully_controllable([*control, zz_generator(), exchange_generator()])
        assert is_fully_controllable([*control, heisenberg_generator()])

    def test_generator_validation(self):
        """Test non-Hermitian or traced generators are rejected."""
        with pytest.raises(ValidationError):
            HermitianGenerator(np.eye(4), "identity")
        with pytest.raises(ValidationError):
            HermitianGenerator(1j * pauli_basis()[5], "anti")
        with pytest.raises(ValidationError):
            HermitianGenerator(np.eye(2), "small")

    def test_max_dim_bound(self):
        """Test max_dim above su(4) is rejected."""
        with pytest.raises(ValidationError):
            lie_closure(control_generators(), max_dim=16)


class TestMeasurementReachability:
    """Test cases for measurement-operator reachability."""

    def test_conjugate_pauli(self):
        """Test iSWAP moves σz from control to hidden."""
        image = conjugate_pauli(gates.ISWAP, PauliOperator("ZI"))
        assert image.label == "IZ"
        assert conjugate_pauli(gates.SQRT_SWAP, PauliOperator("ZI")) is None

    def test_iswap_and_cphase_complete(self):
        """Test iSWAP plus cPHASE makes all 16 operators measurable."""
        unitaries, names = hidden_gate_set("ISWAP", "CPHASE")
        report = measurement_reachability(unitaries, HIDDEN_NATIVE, 6, names)

        assert report.method == "clifford"
        assert report.complete
        assert report.reachable == set(PAULI_LABELS)
        assert report.unreachable == []

    def test_witnesses_reproduce_operators(self):
        """Test every witness word conjugates σz⊗1 into its signed Pauli."""
        unitaries, names = hidden_gate_set("ISWAP", "CPHASE")
        library = dict(zip(names, unitaries, strict=True))
        report = measurement_reachability(unitaries, HIDDEN_NATIVE, 6, names)

        for label, word in report.witness_sequences.items():
            if label == "+II":
                continue
            sign = -1 if label.startswith("-") else 1
            target = PauliOperator(label[1:], sign).matrix
            unitary = _sequence_unitary(word, library)
            native = pauli_basis()[12]
            assert np.allclose(unitary.conj().T @ native @ unitary, target), label

    def test_single_coupling_incomplete(self):
        """Test one two-qubit gate type alone leaves operators unreachable."""
        for gate in ("CPHASE", "ISWAP", "SWAP"):
            unitaries, names = hidden_gate_set(gate)
            report = measurement_reachability(unitaries, HIDDEN_NATIVE, 8, names)
            assert not report.complete, gate
            assert report.unreachable

    def test_iswap_alone_misses_hidden_transverse(self):
        """Test iSWAP with control rotations cannot reach σx on the hidden qubit."""
        unitaries, names = hidden_gate_set("ISWAP")
        report = measurement_reachability(unitaries, HIDDEN_NATIVE, 8, names)
        assert "IX" in report.unreachable
        assert "IZ" in report.reachable

    def test_sqrt_swap_uses_span(self):
        """Test a non-Clifford set is explored through its linear span."""
        unitaries, names = hidden_gate_set("SQRT_SWAP")
        report = measurement_reachability(unitaries, HIDDEN_NATIVE, 8, names)
        assert report.method == "span"
        assert report.complete

    def test_sqrt_swap_completeness(self):
        """Test √SWAP alone and every pair of two-qubit gates complete the readout."""
        assert verify_sqrt_swap_completeness()

    def test_full_control_readout(self):
        """Test full local control with native ZZ readout."""
        names = ["RX_C", "RY_C", "RX_H", "RY_H"]
        unitaries = [gates.GATE_LIBRARY[name] for name in names]
        report = measurement_reachability(unitaries, FULL_NATIVE, 4, names)
        assert report.complete

    def test_input_validation(self):
        """Test invalid reachability inputs."""
        unitaries, names = hidden_gate_set("ISWAP")
        with pytest.raises(ValidationError):
            measurement_reachability(unitaries, [], 4, names)
        with pytest.raises(ValidationError):
            measurement_reachability(unitaries, HIDDEN_NATIVE, 4, names[:1])
        with pytest.raises(ValidationError):
            measurement_reachability([gates.SQRT_SWAP], HIDDEN_NATIVE, 4, method="clifford")

    def test_report_to_dict(self):
        """Test the report serializes with sorted labels."""
        unitaries, names = hidden_gate_set("CPHASE")
        data = measurement_reachability(unitaries, HIDDEN_NATIVE, 4, names).to_dict()
        assert data["reachable"] == sorted(data["reachable"])
        assert data["method"] == "clifford"
        assert data["witness_sequences"]["+ZI"] == []


class TestClaimBattery:
    """Test cases for the full claim battery."""

    def test_all_claims_pass(self, quiet_logger):
        """Test every universality and measurability claim verifies."""
        claims = run_claim_battery()

        assert len(claims) == 13
        failed = [claim.name for claim in claims if not claim.passed]
        assert failed == []
        assert "verified" in quiet_logger.getvalue()


class TestGateFile:
    """Test cases for gate-set description files."""

    def test_library_names(self, temp_config_dir):
        """Test loading library gate names with defaults."""
        path = temp_config_dir / "gates.json"
        path.write_text(json.dumps({"gates": ["RX_C", "RY_C", "ISWAP"]}), encoding="utf-8")

        unitaries, names, native, max_depth = load_gate_file(path)

        assert names == ["RX_C", "RY_C", "ISWAP"]
        assert len(unitaries) == 3
        assert [str(op) for op in native] == ["+II", "+ZI"]
        assert max_depth == 6

    def test_explicit_matrices(self, temp_config_dir):
        """Test matrices with [re, im] entries."""
        swap = [[1, 0, 0, 0], [0, 0, 1, 0], [0, 1, 0, 0], [0, 0, 0, 1]]
        iswap = [[1, 0, 0, 0], [0, 0, [0, 1], 0], [0, [0, 1], 0, 0], [0, 0, 0, 1]]
        path = temp_config_dir / "gates.json"
        path.write_text(
            json.dumps(
                {"gates": {"S": swap, "I": iswap}, "native": ["ZI", "-ZZ"], "max_depth": 3}
            ),
            encoding="utf-8",
        )

        unitaries, names, native, max_depth = load_gate_file(path)

        assert names == ["S", "I"]
        assert np.allclose(unitaries[1], gates.ISWAP)
        assert str(native[1]) == "-ZZ"
        assert max_depth == 3

    def test_malformed_files(self, temp_config_dir):
        """Test malformed gate files raise ValidationError."""
        documents = [
            "not json",
            json.dumps({"native": ["ZI"]}),
            json.dumps({"gates": ["TOFFOLI"]}),
            json.dumps({"gates": {"A": [[1, 0], [0, 1]]}}),
            json.dumps({"gates": {"A": [[2, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]}}),
            json.dumps({"gates": ["ISWAP"], "max_depth": 0}),
            json.dumps({"gates": []}),
        ]
        path = temp_config_dir / "gates.json"
        for document in documents:
            path.write_text(document, encoding="utf-8")
            with pytest.raises(ValidationError):
                load_gate_file(path)
