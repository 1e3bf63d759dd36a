import pytest

from circnot import (
    CircularCircuit,
    CutSet,
    Direction,
    circularize,
    gadget,
)
from circnot.errors import CircuitSyntaxError
from circnot.textio import (
    circuit_from_kv,
    circuit_to_kv,
    cut_set_from_kv,
    cut_set_to_kv,
    format_circuit,
    format_cut_set,
    format_icm,
    join_record_from_kv,
    join_record_to_kv,
    kv_dumps,
    kv_loads,
    parse_circuit,
    parse_cut_file,
    parse_icm_file,
)
from helpers import mklin


class TestCircuitFormat:
    def test_round_trip_linear(self):
        text = "linear\nwires 3\ncnot 0 1\ncnot 1 2\n"
        assert format_circuit(parse_circuit(text)) == text

    def test_round_trip_circular(self, swap):
        assert parse_circuit(format_circuit(swap)) == swap

    def test_comments_and_blanks_ignored(self):
        text = "# header comment\nlinear\n\nwires 2  # two qubits\ncnot 0 1\n"
        lin = parse_circuit(text)
        assert lin.n_qubits == 2 and len(lin.gates) == 1

    def test_syntax_error_reports_line(self):
        with pytest.raises(CircuitSyntaxError) as err:
            parse_circuit("linear\nwires 2\nnope 1 2\n")
        assert err.value.line == 3

    def test_missing_header(self):
        with pytest.raises(CircuitSyntaxError):
            parse_circuit("wires 2\ncnot 0 1\n")

    def test_gates_before_wires(self):
        with pytest.raises(CircuitSyntaxError):
            parse_circuit("linear\ncnot 0 1\nwires 2\n")


class TestCutFormat:
    def test_round_trip(self):
        cuts = CutSet.of([(0, 2), (1, 2)])
        text = format_cut_set(cuts, Direction.CW)
        parsed, direction = parse_cut_file(text)
        assert parsed == cuts and direction == Direction.CW

    def test_direction_optional(self):
        parsed, direction = parse_cut_file("cut 0 1\n")
        assert direction is None and len(parsed) == 1

    def test_bad_line(self):
        with pytest.raises(CircuitSyntaxError):
            parse_cut_file("cut 0\n")


class TestIcmFormat:
    def test_gadget_round_trip(self):
        for name in ("t", "v", "bell", "remotecnot", "sdt"):
            icm = gadget(name)
            parsed, faults = parse_icm_file(format_icm(icm))
            assert parsed == icm
            assert faults == []

    def test_fault_lines(self):
        icm = gadget("t")
        text = format_icm(icm) + "smgf 0\n"
        _, faults = parse_icm_file(text)
        assert [f.gate for f in faults] == [0]

    def test_defaults_are_symbolic_inputs(self):
        icm, _ = parse_icm_file("linear\nwires 2\ncnot 0 1\n")
        assert all(cfg.init.is_symbolic for cfg in icm.configs)
        assert all(cfg.meas.kind == "none" for cfg in icm.configs)

    def test_rejects_circular(self):
        with pytest.raises(CircuitSyntaxError):
            parse_icm_file("circular\nwires 2\ncnot 0 1\ncnot 1 0\n")


class TestKvTree:
    def test_scalar_and_nesting(self):
        tree = {"a": 1, "b": {"c": "text", "d": [1, 2]}}
        assert kv_loads(kv_dumps(tree)) == tree

    def test_circuit_round_trip(self, swap):
        assert circuit_from_kv(kv_loads(kv_dumps(circuit_to_kv(swap)))) == swap

    def test_linear_circuit_round_trip(self):
        lin = mklin(3, [(0, 1), (2, 1)])
        assert circuit_from_kv(kv_loads(kv_dumps(circuit_to_kv(lin)))) == lin

    def test_cut_set_round_trip(self):
        cuts = CutSet.of([(0, 1), (1, 0)])
        dumped = kv_dumps(cut_set_to_kv(cuts, Direction.CCW))
        parsed, direction = cut_set_from_kv(kv_loads(dumped))
        assert parsed == cuts and direction == Direction.CCW

    def test_join_record_round_trip(self):
        _, record = circularize(mklin(3, [(0, 1), (1, 2)]))
        dumped = kv_dumps(join_record_to_kv(record))
        assert join_record_from_kv(kv_loads(dumped)) == record

    def test_unbalanced_brace(self):
        with pytest.raises(CircuitSyntaxError):
            kv_loads("a {\nb 1\n")
