import itertools
import random

import pytest

from circnot import (
    CircularCircuit,
    CNOTGate,
    CutSet,
    Direction,
    Gap,
    LinearCircuit,
    LinearGate,
    circularize,
    cyclic_equal,
    enumerate_cut_points,
    linearize,
    radial_slots,
    validate_cut_set,
)
from circnot.errors import (
    ControlEqualsTarget,
    DuplicateCut,
    EmptyCutSet,
    EmptyWire,
    NoRadialCut,
    UnknownGap,
    WireOutOfRange,
)
from circnot.textio import parse_circuit
from helpers import all_small_circuits, mkcirc, mklin, swap_circular


class TestParsing:
    def test_parse_linear_swap(self):
        lin = parse_circuit("linear\nwires 2\ncnot 0 1\ncnot 1 0\ncnot 0 1\n")
        assert isinstance(lin, LinearCircuit)
        assert lin.n_qubits == 2
        assert lin.gate_pairs() == ((0, 1), (1, 0), (0, 1))
        assert [g.time for g in lin.gates] == [0, 1, 2]

    def test_parse_empty_linear(self):
        lin = parse_circuit("linear\nwires 1\n")
        assert lin.n_qubits == 1
        assert lin.gates == ()

    def test_parse_control_equals_target(self):
        with pytest.raises(ControlEqualsTarget):
            parse_circuit("linear\nwires 2\ncnot 0 0\n")

    def test_parse_wire_out_of_range(self):
        with pytest.raises(WireOutOfRange):
            parse_circuit("circular\nwires 2\ncnot 0 2\n")


class TestCircularConstruction:
    def test_rejects_untouched_wire(self):
        with pytest.raises(EmptyWire) as err:
            mkcirc(3, [(0, 1)])
        assert err.value.wires == (2,)

    def test_rejects_duplicate_positions(self):
        with pytest.raises(ValueError):
            CircularCircuit(
                wires=2,
                gates=(CNOTGate(0, 0, 1, 0), CNOTGate(1, 1, 0, 0)),
            )

    def test_symbol_tables(self):
        swap = swap_circular()
        kinds0 = [k for _, _, k in swap.symbols(0)]
        kinds1 = [k for _, _, k in swap.symbols(1)]
        assert kinds0 == ["control", "target", "control"]
        assert kinds1 == ["target", "control", "target"]


class TestEnumerateCutPoints:
    def test_swap_has_six(self):
        points = enumerate_cut_points(swap_circular())
        assert len(points) == 6
        assert [(p.gap.wire, p.gap.index) for p in points] == [
            (0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (1, 2),
        ]

    def test_single_cnot_has_two(self):
        assert len(enumerate_cut_points(mkcirc(2, [(0, 1)]))) == 2

    def test_count_equals_symbol_total(self):
        # brute-force symbol count per wire, on a circularized decomposition
        from circnot import strip_and_circularize, toffoli_decomposition, translate_to_icm

        gates, n = toffoli_decomposition()
        circ, _ = strip_and_circularize(translate_to_icm(gates, n))
        total = sum(
            sum(1 for g in circ.gates if w in (g.control, g.target))
            for w in range(circ.wires)
        )
        assert len(enumerate_cut_points(circ)) == total

    def test_deterministic(self):
        c = swap_circular()
        assert enumerate_cut_points(c) == enumerate_cut_points(c)


class TestValidateCutSet:
    def test_radial_pair_valid(self, swap):
        validate_cut_set(swap, CutSet.of([(0, 2), (1, 2)]))

    def test_non_colinear_rejected(self, swap):
        with pytest.raises(NoRadialCut):
            validate_cut_set(swap, CutSet.of([(0, 0), (1, 1)]))

    def test_empty_rejected(self, swap):
        with pytest.raises(EmptyCutSet):
            validate_cut_set(swap, CutSet(frozenset()))

    def test_unknown_gap(self, swap):
        with pytest.raises(UnknownGap):
            validate_cut_set(swap, CutSet.of([(0, 2), (1, 5)]))

    def test_duplicate_cut_at_construction(self):
        with pytest.raises(DuplicateCut):
            CutSet.of([(0, 1), (0, 1)])

    def test_single_wire_uncut_rejected(self, swap):
        with pytest.raises(NoRadialCut) as err:
            validate_cut_set(swap, CutSet.of([(0, 0), (0, 1), (0, 2)]))
        # wire 1 lacks a cut at every slot
        assert all(1 in wires for wires in err.value.missing_by_slot.values())


class TestLinearize:
    def test_swap_reconstruction(self, swap, swap_cut_sets):
        lin = linearize(swap, swap_cut_sets["swap"], Direction.CW)
        assert lin.n_qubits == 2
        assert lin.gate_pairs() == ((0, 1), (1, 0), (0, 1))

    def test_rotated_cut_gives_permuted_list(self, swap, swap_cut_sets):
        lin = linearize(swap, swap_cut_sets["single-cnot"], Direction.CW)
        assert lin.gate_pairs() == ((0, 1), (0, 1), (1, 0))

    def test_teleported_cnot_shape(self, swap, swap_cut_sets):
        lin = linearize(swap, swap_cut_sets["teleported-cnot"], Direction.CW)
        assert lin.n_qubits == 4
        assert len(lin.gates) == 3
        # remote-CNOT connectivity: the bridging qubit is target, control,
        # target of the three gates in order
        assert lin.gate_pairs() == ((0, 3), (3, 1), (2, 3))

    def test_sdt_shape(self, swap, swap_cut_sets):
        lin = linearize(swap, swap_cut_sets["sdt"], Direction.CW)
        assert lin.n_qubits == 4
        relabel = {0: 3, 2: 1, 1: 0, 3: 2}
        relabeled = tuple((relabel[c], relabel[t]) for c, t in lin.gate_pairs())
        assert relabeled == ((3, 1), (0, 1), (2, 0))

    def test_qubit_count_equals_cut_count_exhaustive(self):
        # every valid cut set of a small fixture family
        family = [
            mkcirc(2, [(0, 1)]),
            swap_circular(),
            mkcirc(3, [(0, 1), (1, 2), (2, 0)]),
            mkcirc(4, [(0, 1), (2, 3), (1, 2), (3, 0), (0, 2), (1, 3)]),
        ]
        for c in family:
            gaps = [p.gap for p in enumerate_cut_points(c)]
            for k in range(1, len(gaps) + 1):
                for combo in itertools.combinations(gaps, k):
                    cuts = CutSet.of(combo)
                    if not radial_slots(c, cuts):
                        continue
                    assert linearize(c, cuts, Direction.CW).n_qubits == len(cuts)

    def test_radial_only_cut_sets_cyclically_equal(self):
        for c in [swap_circular(), mkcirc(3, [(0, 1), (1, 2), (2, 0), (0, 2)])]:
            lists = []
            for slot in range(len(c.slots())):
                cuts = CutSet.of(c.gap_spanning(w, slot) for w in range(c.wires))
                lists.append(linearize(c, cuts, Direction.CW).gate_pairs())
            for a, b in itertools.combinations(lists, 2):
                assert cyclic_equal(a, b)

    def test_ccw_reverses_and_swaps_endpoints(self, swap, swap_cut_sets):
        cw = linearize(swap, swap_cut_sets["swap"], Direction.CW)
        ccw = linearize(swap, swap_cut_sets["swap"], Direction.CCW)
        assert ccw.gate_pairs() == tuple(reversed(cw.gate_pairs()))
        for o_cw, o_ccw in zip(cw.origins, ccw.origins):
            assert o_cw.input_cut == o_ccw.output_cut
            assert o_cw.output_cut == o_ccw.input_cut


class TestCircularize:
    def test_single_cnot_self_loops(self):
        circ, rec = circularize(mklin(2, [(0, 1)]))
        assert circ.wires == 2
        assert rec.joins == ()
        assert rec.loops == ((0, 0), (1, 1))

    def test_three_qubit_chain_joins(self):
        # gate on (q0,q1) then (q1,q2): q2's first symbol is after all of
        # q0's, so q2's input joins q0's output
        circ, rec = circularize(mklin(3, [(0, 1), (1, 2)]))
        assert circ.wires == 2
        assert rec.joins == ((2, 0),)
        assert rec.wire_of == (0, 1, 0)

    def test_empty_circuit_rejected_with_record(self):
        with pytest.raises(EmptyWire) as err:
            circularize(mklin(1, []))
        assert err.value.join_record is not None
        assert err.value.join_record.loops == ((0, 0),)

    def test_seam_round_trip_random(self):
        rng = random.Random(2024)
        done = 0
        while done < 120:
            n = rng.randint(2, 8)
            m = rng.randint(n, 20)
            lin = mklin(n, [tuple(rng.sample(range(n), 2)) for _ in range(m)])
            if any(not lin.times_on(q) for q in range(n)):
                continue
            done += 1
            circ, rec = circularize(lin)
            assert circ.wires == n - len(rec.joins)
            # joins form a permutation fragment: no endpoint reused
            consumers = [q for q, _ in rec.joins]
            producers = [p for _, p in rec.joins]
            assert len(set(consumers)) == len(consumers)
            assert len(set(producers)) == len(producers)
            redone = linearize(circ, rec.seam, Direction.CW)
            expected = tuple(
                (rec.wire_of[g.control], rec.wire_of[g.target]) for g in lin.gates
            )
            assert redone.gate_pairs() == expected
            assert redone.n_qubits == circ.wires


class TestCyclicEqual:
    def test_rotation_detected(self):
        assert cyclic_equal([(0, 1), (1, 0), (0, 1)], [(1, 0), (0, 1), (0, 1)])

    def test_identity(self):
        lst = [(0, 1), (2, 1)]
        assert cyclic_equal(lst, lst)

    def test_length_mismatch(self):
        assert not cyclic_equal([(0, 1)] * 3, [(0, 1)])

    def test_renaming_applies(self):
        a = [(0, 1), (1, 0)]
        b = [(1, 0), (0, 1)]
        assert cyclic_equal(a, b, renaming={0: 1, 1: 0})

    def test_gate_objects_accepted(self):
        lin = mklin(2, [(0, 1), (1, 0)])
        assert cyclic_equal(lin.gates, [(1, 0), (0, 1)])


def test_exhaustive_family_size_sanity():
    circuits = all_small_circuits()
    assert len(circuits) > 200
    assert all(c.wires <= 3 and len(c.gates) <= 4 for c in circuits)
