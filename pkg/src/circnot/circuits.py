"""Circular and linear CNOT circuits, cut enumeration, and rewiring.

A circular circuit places its gates at pairwise distinct integer positions
around a circle; every wire is a closed loop crossing all positions. A wire
carries a control symbol at each gate that controls from it and a target
symbol at each gate that targets it. Gaps sit between cyclically adjacent
symbols of one wire and are the only legal cut locations. Gap ``(w, i)`` is
the gap that follows wire ``w``'s ``i``-th symbol in clockwise order
(clockwise means increasing position).
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass
from enum import Enum

from .errors import (
    ControlEqualsTarget,
    DuplicateCut,
    EmptyCutSet,
    EmptyWire,
    NoRadialCut,
    UnknownGap,
    UnknownGate,
    WireOutOfRange,
)

CONTROL = "control"
TARGET = "target"


class Direction(Enum):
    CW = "cw"
    CCW = "ccw"

    @classmethod
    def parse(cls, text: str) -> "Direction":
        try:
            return cls(text.strip().lower())
        except ValueError:
            raise ValueError(f"unknown direction {text!r}; expected cw or ccw") from None


@dataclass(frozen=True, order=True)
class Gap:
    """Potential cut point: the gap following symbol ``index`` on ``wire``."""

    wire: int
    index: int


@dataclass(frozen=True, order=True)
class CutPoint:
    gap: Gap


@dataclass(frozen=True)
class CutSet:
    cuts: frozenset[CutPoint]

    @classmethod
    def of(cls, items) -> "CutSet":
        """Build from (wire, gap) pairs, Gaps, or CutPoints; rejects repeats."""
        points: list[CutPoint] = []
        for item in items:
            if isinstance(item, CutPoint):
                points.append(item)
            elif isinstance(item, Gap):
                points.append(CutPoint(item))
            else:
                w, i = item
                points.append(CutPoint(Gap(int(w), int(i))))
        if len(set(points)) != len(points):
            seen: set[CutPoint] = set()
            for p in points:
                if p in seen:
                    raise DuplicateCut(f"cut repeated at wire {p.gap.wire} gap {p.gap.index}")
                seen.add(p)
        return cls(frozenset(points))

    def gaps(self) -> frozenset[Gap]:
        return frozenset(p.gap for p in self.cuts)

    def sorted_gaps(self) -> tuple[Gap, ...]:
        return tuple(sorted(self.gaps()))

    def __len__(self) -> int:
        return len(self.cuts)

    def __contains__(self, gap: Gap) -> bool:
        return CutPoint(gap) in self.cuts


@dataclass(frozen=True)
class CNOTGate:
    id: int
    control: int
    target: int
    position: int

    def __post_init__(self):
        if self.control == self.target:
            raise ControlEqualsTarget(f"gate {self.id}: control == target == {self.control}")


@dataclass(frozen=True)
class CircularCircuit:
    """Closed-loop CNOT circuit: no inputs, no outputs.

    ``gates`` are kept sorted by position; every wire must carry at least
    one symbol (segmentation is undefined for bare loops).
    """

    wires: int
    gates: tuple[CNOTGate, ...]

    def __post_init__(self):
        gates = tuple(sorted(self.gates, key=lambda g: g.position))
        object.__setattr__(self, "gates", gates)
        positions = [g.position for g in gates]
        if len(set(positions)) != len(positions):
            raise ValueError("gate positions must be pairwise distinct")
        touched: set[int] = set()
        for g in gates:
            for w in (g.control, g.target):
                if not 0 <= w < self.wires:
                    raise WireOutOfRange(f"gate {g.id} references wire {w} of {self.wires}")
            touched.add(g.control)
            touched.add(g.target)
        empty = set(range(self.wires)) - touched
        if empty:
            raise EmptyWire(empty)
        # symbol tables: per wire, (position, gate index, kind) clockwise
        symbols: list[list[tuple[int, int, str]]] = [[] for _ in range(self.wires)]
        for gi, g in enumerate(gates):
            symbols[g.control].append((g.position, gi, CONTROL))
            symbols[g.target].append((g.position, gi, TARGET))
        for row in symbols:
            row.sort()
        object.__setattr__(self, "_symbols", tuple(tuple(row) for row in symbols))
        sym_index: list[dict[int, int]] = [{} for _ in range(self.wires)]
        for w, row in enumerate(symbols):
            for si, (_, gi, _) in enumerate(row):
                sym_index[w][gi] = si
        object.__setattr__(self, "_sym_index", tuple(sym_index))
        object.__setattr__(
            self,
            "_slots",
            tuple(
                (positions[j], positions[(j + 1) % len(positions)])
                for j in range(len(positions))
            ),
        )
        object.__setattr__(
            self, "_wire_positions", tuple(tuple(p for p, _, _ in row) for row in symbols)
        )

    def symbols(self, wire: int) -> tuple[tuple[int, int, str], ...]:
        """Clockwise (position, gate index, kind) symbols on a wire."""
        return self._symbols[wire]

    def symbol_count(self, wire: int) -> int:
        return len(self._symbols[wire])

    def symbol_index(self, wire: int, gate_index: int) -> int:
        """Index of the given gate's symbol among the wire's symbols."""
        return self._sym_index[wire][gate_index]

    def gate_by_id(self, gate_id: int) -> CNOTGate:
        for g in self.gates:
            if g.id == gate_id:
                return g
        raise UnknownGate(f"no gate with id {gate_id}")

    def slots(self) -> tuple[tuple[int, int], ...]:
        """Inter-position angular slots as (position_before, position_after).

        Slot ``j`` lies strictly between global gate positions ``q_j`` and
        ``q_{j+1}``; the last slot wraps back to the first position.
        """
        return self._slots

    def gap_spanning(self, wire: int, slot: int) -> Gap:
        """The unique gap on ``wire`` whose arc covers the given slot."""
        q_before = self._slots[slot][0]
        positions = self._wire_positions[wire]
        i = bisect.bisect_right(positions, q_before) - 1
        if i < 0:
            i = len(positions) - 1
        return Gap(wire, i)

    def gap_valid(self, gap: Gap) -> bool:
        return 0 <= gap.wire < self.wires and 0 <= gap.index < len(self._symbols[gap.wire])


@dataclass(frozen=True)
class ArcOrigin:
    """Where a linear qubit came from: a wire arc between two cuts.

    ``input_cut``/``output_cut`` are resolved for the traversal direction
    used during linearization.
    """

    wire: int
    input_cut: Gap
    output_cut: Gap


@dataclass(frozen=True)
class LinearGate:
    control: int
    target: int
    time: int
    source: int | None = None

    def __post_init__(self):
        if self.control == self.target:
            raise ControlEqualsTarget(f"gate at t={self.time}: control == target")


@dataclass(frozen=True)
class LinearCircuit:
    n_qubits: int
    gates: tuple[LinearGate, ...]
    origins: tuple[ArcOrigin, ...] | None = None
    direction: Direction | None = None

    def __post_init__(self):
        times = [g.time for g in self.gates]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("gate times must be strictly increasing")
        for g in self.gates:
            for q in (g.control, g.target):
                if not 0 <= q < self.n_qubits:
                    raise WireOutOfRange(f"gate at t={g.time} references qubit {q} of {self.n_qubits}")
        if self.origins is not None and len(self.origins) != self.n_qubits:
            raise ValueError("one origin per qubit required")

    def gate_pairs(self) -> tuple[tuple[int, int], ...]:
        return tuple((g.control, g.target) for g in self.gates)

    def times_on(self, qubit: int) -> tuple[int, ...]:
        return tuple(g.time for g in self.gates if qubit in (g.control, g.target))


@dataclass(frozen=True)
class JoinRecord:
    """Endpoint pairings produced by circularization.

    ``joins`` are cross-joins (consumer input, producer output) chosen by the
    neighbour scan; ``loops`` close each remaining chain onto itself and
    degenerate to self-loops for unmatched qubits. ``wire_of`` maps every
    source qubit to its circular wire and ``seam`` is the radial cut set that
    undoes the construction.
    """

    joins: tuple[tuple[int, int], ...]
    loops: tuple[tuple[int, int], ...]
    wire_of: tuple[int, ...]
    seam: CutSet


def enumerate_cut_points(c: CircularCircuit) -> list[CutPoint]:
    """All potential cuts, ordered by (wire, gap index)."""
    return [
        CutPoint(Gap(w, i))
        for w in range(c.wires)
        for i in range(c.symbol_count(w))
    ]


def _check_gaps_known(c: CircularCircuit, cuts: CutSet) -> None:
    for gap in cuts.sorted_gaps():
        if not c.gap_valid(gap):
            raise UnknownGap(f"wire {gap.wire} gap {gap.index} does not exist")


def radial_slots(c: CircularCircuit, cuts: CutSet) -> list[int]:
    """Slots at which every wire is cut in the gap spanning that slot."""
    gaps = cuts.gaps()
    out = []
    for slot in range(len(c.slots())):
        if all(c.gap_spanning(w, slot) in gaps for w in range(c.wires)):
            out.append(slot)
    return out


def validate_cut_set(c: CircularCircuit, cuts: CutSet) -> None:
    """Raise unless the cut set admits a valid linearization.

    Validity needs at least one radial family: a slot whose spanning gap is
    cut on every wire. Given one, every arc between consecutive cuts maps to
    a contiguous stretch of the unrolled timeline, so each gate's control and
    target arcs automatically coexist at the gate's position.
    """
    if not cuts.cuts:
        raise EmptyCutSet("cut set is empty")
    _check_gaps_known(c, cuts)
    if radial_slots(c, cuts):
        return
    gaps = cuts.gaps()
    missing = {
        slot: tuple(w for w in range(c.wires) if c.gap_spanning(w, slot) not in gaps)
        for slot in range(len(c.slots()))
    }
    uncut_everywhere = sorted(
        set.intersection(*(set(ws) for ws in missing.values())) if missing else set()
    )
    raise NoRadialCut(
        f"no slot is cut across all wires (wires never cut at any slot: {uncut_everywhere})",
        missing_by_slot=missing,
    )


def _start_slot(c: CircularCircuit, slots_ok: list[int]) -> int:
    """Deterministic start: prefer the wrap slot (before the first position)."""
    wrap = len(c.slots()) - 1
    if wrap in slots_ok:
        return wrap
    return slots_ok[0]


def linearize(c: CircularCircuit, cuts: CutSet, d: Direction) -> LinearCircuit:
    """Cut the circle open and read the gates off in the given direction.

    Each arc between consecutive cuts on a wire becomes one qubit, ordered by
    (wire, traversal order of the arc's clockwise start). Gate times count
    from the chosen radial slot. Counter-clockwise reverses the gate order
    and swaps input/output endpoints but keeps qubit indices.
    """
    validate_cut_set(c, cuts)
    start = _start_slot(c, radial_slots(c, cuts))
    n_gates = len(c.gates)
    if d is Direction.CW:
        order = [(start + 1 + k) % n_gates for k in range(n_gates)]
    else:
        order = [(start - k) % n_gates for k in range(n_gates)]

    gaps = cuts.gaps()
    qubits: list[tuple[int, Gap, Gap]] = []  # (wire, cw start gap, cw end gap)
    sym_to_qubit: list[dict[int, int]] = [dict() for _ in range(c.wires)]
    for w in range(c.wires):
        wire_cuts = sorted(g.index for g in gaps if g.wire == w)
        anchor = c.gap_spanning(w, start).index
        rotated = wire_cuts[wire_cuts.index(anchor):] + wire_cuts[: wire_cuts.index(anchor)]
        k = c.symbol_count(w)
        for a, b in zip(rotated, rotated[1:] + rotated[:1]):
            q = len(qubits)
            qubits.append((w, Gap(w, a), Gap(w, b)))
            span = (b - a) % k or k
            for step in range(1, span + 1):
                sym_to_qubit[w][(a + step) % k] = q

    lin_gates = []
    for t, gi in enumerate(order):
        g = c.gates[gi]
        cq = sym_to_qubit[g.control][c.symbol_index(g.control, gi)]
        tq = sym_to_qubit[g.target][c.symbol_index(g.target, gi)]
        lin_gates.append(LinearGate(control=cq, target=tq, time=t, source=g.id))

    origins = tuple(
        ArcOrigin(w, a, b) if d is Direction.CW else ArcOrigin(w, b, a)
        for (w, a, b) in qubits
    )
    return LinearCircuit(
        n_qubits=len(qubits),
        gates=tuple(lin_gates),
        origins=origins,
        direction=d,
    )


def circularize(l: LinearCircuit) -> tuple[CircularCircuit, JoinRecord]:
    """Close a linear circuit into circular wires (qubit reuse by joining).

    Scans qubits bottom-up; each joins its input to the output of the closest
    not-yet-consumed qubit above whose every gate symbol acts strictly before
    the current qubit's first symbol. Remaining open endpoints are looped
    chain-by-chain. Gate order survives as the cyclic position order.
    """
    n = l.n_qubits
    times = [l.times_on(q) for q in range(n)]
    first = [t[0] if t else None for t in times]
    consumed = [False] * n
    joins: list[tuple[int, int]] = []
    for q in range(n - 1, 0, -1):
        for p in range(q - 1, -1, -1):
            if consumed[p]:
                continue
            if first[q] is not None and times[p] and times[p][-1] >= first[q]:
                continue
            joins.append((q, p))
            consumed[p] = True
            break
    consumer_of = {p: q for q, p in joins}
    heads = sorted(set(range(n)) - {q for q, _ in joins})
    wire_of = [0] * n
    loops: list[tuple[int, int]] = []
    for w, h in enumerate(heads):
        cur = h
        wire_of[cur] = w
        while cur in consumer_of:
            cur = consumer_of[cur]
            wire_of[cur] = w
        loops.append((h, cur))

    record_without_seam = JoinRecord(
        joins=tuple(joins),
        loops=tuple(loops),
        wire_of=tuple(wire_of),
        seam=CutSet(frozenset()),
    )
    gates = tuple(
        CNOTGate(id=i, control=wire_of[g.control], target=wire_of[g.target], position=g.time)
        for i, g in enumerate(l.gates)
    )
    try:
        circ = CircularCircuit(wires=len(heads), gates=gates)
    except EmptyWire as err:
        raise EmptyWire(err.wires, join_record=record_without_seam) from None
    seam = CutSet.of(Gap(w, circ.symbol_count(w) - 1) for w in range(circ.wires))
    return circ, JoinRecord(
        joins=record_without_seam.joins,
        loops=record_without_seam.loops,
        wire_of=record_without_seam.wire_of,
        seam=seam,
    )


def cyclic_equal(a, b, renaming: dict[int, int] | None = None) -> bool:
    """True when gate list ``b`` is a rotation of ``a`` under the renaming.

    Lists may be (control, target) pairs or gate objects carrying those
    attributes; times and positions are ignored.
    """

    def pairs(seq):
        out = []
        for g in seq:
            if isinstance(g, tuple):
                out.append((g[0], g[1]))
            else:
                out.append((g.control, g.target))
        return out

    pa, pb = pairs(a), pairs(b)
    if len(pa) != len(pb):
        return False
    if renaming:
        pa = [(renaming.get(c, c), renaming.get(t, t)) for c, t in pa]
    if not pa:
        return True
    for shift in range(len(pa)):
        if pa[shift:] + pa[:shift] == pb:
            return True
    return False
