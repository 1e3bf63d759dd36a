"""ICM circuits: configuration, teleportation gadgets, Clifford+T
translation, stripping back to circular form, and missing-gate faults.

An ICM circuit is a CNOT-only linear circuit plus one initialisation and
one measurement choice per qubit. Rotations live entirely in the choice of
ancilla states (|Y>, |A>) and measurement bases, so every construction here
emits CNOTs only.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .circuits import (
    CircularCircuit,
    CutSet,
    Direction,
    Gap,
    JoinRecord,
    LinearCircuit,
    LinearGate,
    circularize,
    linearize,
)
from .errors import CountMismatch, InvalidAncillaConfig, UnknownGate
from .model import ModelKind, _rows_to_sets, _solve_map_rows, build_model
from .stabmap import StabiliserMap


class Role(Enum):
    INPUT = "input"
    OUTPUT = "output"
    ANCILLA = "ancilla"


class BasisState(Enum):
    ZERO = "zero"
    PLUS = "plus"
    Y = "y"
    A = "a"


@dataclass(frozen=True)
class InitBasis:
    """Concrete preparation state, or a named symbolic input."""

    state: BasisState | None
    input_name: str | None = None

    @classmethod
    def zero(cls):
        return cls(BasisState.ZERO)

    @classmethod
    def plus(cls):
        return cls(BasisState.PLUS)

    @classmethod
    def y(cls):
        return cls(BasisState.Y)

    @classmethod
    def a(cls):
        return cls(BasisState.A)

    @classmethod
    def symbolic(cls, name: str):
        return cls(None, name)

    @property
    def is_symbolic(self) -> bool:
        return self.state is None

    @property
    def text(self) -> str:
        return f"in:{self.input_name}" if self.is_symbolic else self.state.value


@dataclass(frozen=True)
class MeasBasis:
    kind: str  # "x" | "y" | "z" | "a" | "cfg" | "none"
    options: tuple[str, str] | None = None

    def __post_init__(self):
        if self.kind not in ("x", "y", "z", "a", "cfg", "none"):
            raise ValueError(f"unknown measurement basis {self.kind!r}")
        if (self.kind == "cfg") != (self.options is not None):
            raise ValueError("cfg basis requires exactly two options")
        if self.options is not None and (
            len(self.options) != 2 or any(o not in ("x", "y", "z", "a") for o in self.options)
        ):
            raise ValueError(f"bad configurable options {self.options!r}")

    @classmethod
    def x(cls):
        return cls("x")

    @classmethod
    def y(cls):
        return cls("y")

    @classmethod
    def z(cls):
        return cls("z")

    @classmethod
    def a(cls):
        return cls("a")

    @classmethod
    def none(cls):
        return cls("none")

    @classmethod
    def cfg(cls, first: str, second: str):
        return cls("cfg", (first, second))

    @property
    def text(self) -> str:
        return f"cfg:{self.options[0]}/{self.options[1]}" if self.kind == "cfg" else self.kind


@dataclass(frozen=True)
class QubitConfig:
    role: Role
    init: InitBasis
    meas: MeasBasis

    def __post_init__(self):
        if self.role is Role.INPUT and not self.init.is_symbolic:
            raise InvalidAncillaConfig("input qubits take a symbolic state")
        if self.role is Role.ANCILLA and (self.init.is_symbolic or self.meas.kind == "none"):
            raise InvalidAncillaConfig("ancillae need a concrete state and a measurement")
        if self.role is Role.OUTPUT and (self.init.is_symbolic or self.meas.kind != "none"):
            raise InvalidAncillaConfig("output carriers have a concrete state and no measurement")


def _input(name: str, meas: MeasBasis) -> QubitConfig:
    return QubitConfig(Role.INPUT, InitBasis.symbolic(name), meas)


def _ancilla(state: InitBasis, meas: MeasBasis) -> QubitConfig:
    return QubitConfig(Role.ANCILLA, state, meas)


def _carrier(state: InitBasis) -> QubitConfig:
    return QubitConfig(Role.OUTPUT, state, MeasBasis.none())


@dataclass(frozen=True)
class ICMCircuit:
    circuit: LinearCircuit
    configs: tuple[QubitConfig, ...]

    def __post_init__(self):
        if len(self.configs) != self.circuit.n_qubits:
            raise CountMismatch(
                f"{self.circuit.n_qubits} qubits but {len(self.configs)} configs"
            )

    def measured_qubits(self) -> tuple[int, ...]:
        return tuple(q for q, cfg in enumerate(self.configs) if cfg.meas.kind != "none")

    def output_qubits(self) -> tuple[int, ...]:
        return tuple(q for q, cfg in enumerate(self.configs) if cfg.meas.kind == "none")


def configure(l: LinearCircuit, configs) -> ICMCircuit:
    """Attach per-qubit initialisation/measurement choices to a CNOT list."""
    configs = tuple(configs)
    if len(configs) != l.n_qubits:
        raise CountMismatch(f"{l.n_qubits} qubits but {len(configs)} configs")
    return ICMCircuit(circuit=l, configs=configs)


def _chain(pairs) -> tuple[LinearGate, ...]:
    return tuple(LinearGate(control=c, target=t, time=i) for i, (c, t) in enumerate(pairs))


def gadget(kind: str) -> ICMCircuit:
    """Fixed ICM templates for the teleported operations.

    Teleport/T/P share one skeleton (state injection from the control) and
    differ only in the ancilla state; V teleports through the target; the
    remote CNOT and the selective destination teleporter are the two
    four-qubit instances cut from the circular three-CNOT loop.
    """
    k = kind.strip().lower()
    if k in ("teleport", "t", "p"):
        state = {"teleport": InitBasis.plus(), "t": InitBasis.a(), "p": InitBasis.y()}[k]
        return ICMCircuit(
            circuit=LinearCircuit(n_qubits=2, gates=_chain([(1, 0)])),
            configs=(_input("phi", MeasBasis.z()), _carrier(state)),
        )
    if k == "v":
        return ICMCircuit(
            circuit=LinearCircuit(n_qubits=2, gates=_chain([(1, 0)])),
            configs=(_carrier(InitBasis.y()), _input("phi", MeasBasis.x())),
        )
    if k == "bell":
        return ICMCircuit(
            circuit=LinearCircuit(n_qubits=2, gates=_chain([(1, 0)])),
            configs=(_carrier(InitBasis.zero()), _carrier(InitBasis.plus())),
        )
    if k == "measurez":
        return ICMCircuit(
            circuit=LinearCircuit(n_qubits=2, gates=_chain([(1, 0)])),
            configs=(
                _ancilla(InitBasis.zero(), MeasBasis.z()),
                _input("phi", MeasBasis.none()),
            ),
        )
    if k == "remotecnot":
        return ICMCircuit(
            circuit=LinearCircuit(n_qubits=4, gates=_chain([(1, 0), (2, 1), (1, 3)])),
            configs=(
                _input("c", MeasBasis.z()),
                _ancilla(InitBasis.plus(), MeasBasis.x()),
                _input("t", MeasBasis.none()),
                _carrier(InitBasis.zero()),
            ),
        )
    if k == "sdt":
        return ICMCircuit(
            circuit=LinearCircuit(n_qubits=4, gates=_chain([(3, 1), (0, 1), (2, 0)])),
            configs=(
                _input("phi", MeasBasis.cfg("z", "x")),
                _ancilla(InitBasis.zero(), MeasBasis.cfg("x", "z")),
                _carrier(InitBasis.plus()),
                _carrier(InitBasis.plus()),
            ),
        )
    raise UnknownGate(f"no gadget named {kind!r}")


SINGLE_QUBIT_GATES = ("t", "tdg", "p", "pdg", "v", "h")


def translate_to_icm(gates, n_qubits: int) -> ICMCircuit:
    """Rewrite a {CNOT,T,Tdg,P,Pdg,V,H} program into CNOT-only ICM form.

    Every rotation consumes its logical wire into a measurement and hands
    the line to a fresh gadget qubit: T/P measure the old carrier in Z and
    continue on an |A>/|Y> control; V measures it in X and continues on a
    |Y> target; Pdg expands to three P steps (P cubed); H expands to P,V,P.
    Adjoint T records a configurable measurement so the correction that
    post-selection would otherwise fix stays visible.
    """
    inits: list[InitBasis] = [InitBasis.symbolic(f"q{i}") for i in range(n_qubits)]
    meas: list[MeasBasis] = [MeasBasis.none() for _ in range(n_qubits)]
    emitted: list[tuple[int, int]] = []
    cur = list(range(n_qubits))

    def fresh(state: InitBasis) -> int:
        inits.append(state)
        meas.append(MeasBasis.none())
        return len(inits) - 1

    def inject(q: int, state: InitBasis, old_meas: MeasBasis) -> None:
        new = fresh(state)
        emitted.append((new, cur[q]))
        meas[cur[q]] = old_meas
        cur[q] = new

    def v_step(q: int) -> None:
        new = fresh(InitBasis.y())
        emitted.append((cur[q], new))
        meas[cur[q]] = MeasBasis.x()
        cur[q] = new

    for op in gates:
        name = op[0].lower()
        if name == "cnot":
            _, cq, tq = op
            emitted.append((cur[cq], cur[tq]))
        elif name == "t":
            inject(op[1], InitBasis.a(), MeasBasis.z())
        elif name == "tdg":
            inject(op[1], InitBasis.a(), MeasBasis.cfg("z", "x"))
        elif name == "p":
            inject(op[1], InitBasis.y(), MeasBasis.z())
        elif name == "pdg":
            for _ in range(3):
                inject(op[1], InitBasis.y(), MeasBasis.z())
        elif name == "v":
            v_step(op[1])
        elif name == "h":
            inject(op[1], InitBasis.y(), MeasBasis.z())
            v_step(op[1])
            inject(op[1], InitBasis.y(), MeasBasis.z())
        else:
            raise UnknownGate(f"cannot translate gate {op[0]!r}")

    configs = []
    for i, (ini, mb) in enumerate(zip(inits, meas)):
        if ini.is_symbolic:
            configs.append(QubitConfig(Role.INPUT, ini, mb))
        elif mb.kind == "none":
            configs.append(QubitConfig(Role.OUTPUT, ini, mb))
        else:
            configs.append(QubitConfig(Role.ANCILLA, ini, mb))
    circuit = LinearCircuit(
        n_qubits=len(inits),
        gates=tuple(LinearGate(control=c, target=t, time=i) for i, (c, t) in enumerate(emitted)),
    )
    return ICMCircuit(circuit=circuit, configs=tuple(configs))


def toffoli_decomposition() -> tuple[list[tuple], int]:
    """Doubly-controlled NOT over {CNOT, T, Tdg, P, H}, qubit 2 the target."""
    return (
        [
            ("h", 2),
            ("cnot", 1, 2),
            ("tdg", 2),
            ("cnot", 0, 2),
            ("t", 2),
            ("cnot", 1, 2),
            ("tdg", 2),
            ("cnot", 0, 2),
            ("tdg", 1),
            ("t", 2),
            ("cnot", 0, 1),
            ("h", 2),
            ("tdg", 1),
            ("cnot", 0, 1),
            ("t", 0),
            ("p", 1),
        ],
        3,
    )


def strip_and_circularize(icm: ICMCircuit) -> tuple[CircularCircuit, JoinRecord]:
    """Drop initialisations and measurements, then close the wires."""
    return circularize(icm.circuit)


@dataclass(frozen=True)
class FaultSpec:
    gate: int
    kind: str = "smgf"

    def __post_init__(self):
        if self.kind != "smgf":
            raise UnknownGate(f"unsupported fault kind {self.kind!r}")


@dataclass(frozen=True)
class FaultPatch:
    """Ancilla produced by fault cuts: the control span pinned to |0>.

    |0> is stabilised by Z and never by X, so the faulty gate's target is
    never toggled.
    """

    wire: int
    before_gap: Gap
    after_gap: Gap
    init: InitBasis

    @property
    def x_value(self) -> bool:
        return False

    @property
    def z_value(self) -> bool:
        return True


def inject_smgf(c: CircularCircuit, base: CutSet, f: FaultSpec) -> tuple[CutSet, FaultPatch]:
    """Cut out the faulty gate's control span as a stuck-at-|0> ancilla.

    Adds the two gaps around the control symbol unless already cut; with
    both already present the returned cut set equals the base.
    """
    gate = c.gate_by_id(f.gate)
    gi = next(i for i, g in enumerate(c.gates) if g.id == gate.id)
    w = gate.control
    si = c.symbol_index(w, gi)
    k = c.symbol_count(w)
    before = Gap(w, (si - 1) % k)
    after = Gap(w, si)
    patch = FaultPatch(wire=w, before_gap=before, after_gap=after, init=InitBasis.zero())
    new_gaps = base.gaps() | {before, after}
    if new_gaps == base.gaps():
        return base, patch
    return CutSet.of(sorted(new_gaps)), patch


@dataclass(frozen=True)
class FaultedDerivation:
    """Stabiliser map of a faulted instance, over the base linearization.

    Map rows of absorbed inputs are empty and output sets never mention
    absorbed outputs; ``live_inputs``/``live_outputs`` name the qubits the
    map still speaks for.
    """

    cuts: CutSet
    patch: FaultPatch
    map: StabiliserMap
    live_inputs: frozenset[int]
    live_outputs: frozenset[int]


def faulted_transformations(
    c: CircularCircuit,
    base: CutSet,
    d: Direction,
    f: FaultSpec,
    models=None,
) -> FaultedDerivation:
    """Derive the stabiliser map of the circuit with one gate missing.

    The fault ancilla's input is pinned false in the X model and true in
    the Z model. Cuts the fault adds are transparent to the logical flow:
    when both are fresh the severed neighbour segments are re-joined
    (teleported continuation); when one side was a real base endpoint the
    fresh continuation starts in |0>. Base qubits whose endpoint falls
    inside the ancilla drop out of the map.
    """
    lin = linearize(c, base, d)
    cuts, patch = inject_smgf(c, base, f)
    if models is None:
        models = (build_model(c, ModelKind.X), build_model(c, ModelKind.Z))
    xm, zm = models
    n = lin.n_qubits
    base_gaps = base.gaps()
    cut_gaps = cuts.gaps()
    added = {g for g in (patch.before_gap, patch.after_gap) if g not in base_gaps}
    anc_in_gap = patch.before_gap if d is Direction.CW else patch.after_gap
    anc_out_gap = patch.after_gap if d is Direction.CW else patch.before_gap
    live_in = frozenset(
        q for q, o in enumerate(lin.origins) if o.input_cut != anc_in_gap
    )
    live_out = frozenset(
        q for q, o in enumerate(lin.origins) if o.output_cut != anc_out_gap
    )

    def model_rows(m, pin_value: bool):
        sides = m.gap_sides
        anc_first = sides[anc_in_gap][1] if d is Direction.CW else sides[anc_in_gap][0]
        ins = []
        for q, origin in enumerate(lin.origins):
            if q not in live_in:
                ins.append(None)
                continue
            end_seg, start_seg = sides[origin.input_cut]
            ins.append(start_seg if d is Direction.CW else end_seg)
        outs = []
        for origin in lin.origins:
            end_seg, start_seg = sides[origin.output_cut]
            outs.append(end_seg if d is Direction.CW else start_seg)
        pins = {anc_first: pin_value}
        bridges: tuple = ()
        if len(added) == 2:
            bridges = ((sides[patch.before_gap][0], sides[patch.after_gap][1]),)
        elif len(added) == 1:
            g = next(iter(added))
            in_side = sides[g][1] if d is Direction.CW else sides[g][0]
            if in_side != anc_first:
                pins[in_side] = pin_value
        rows = _solve_map_rows(m, cut_gaps, ins, outs, pins=pins, bridges=bridges)
        sets = _rows_to_sets(rows, n)
        return tuple(
            frozenset(j for j in outs_set if j in live_out) if q in live_in else frozenset()
            for q, outs_set in enumerate(sets)
        )

    x_out = model_rows(xm, False)
    z_out = model_rows(zm, True)
    return FaultedDerivation(
        cuts=cuts,
        patch=patch,
        map=StabiliserMap(n_qubits=n, x_out=x_out, z_out=z_out),
        live_inputs=live_in,
        live_outputs=live_out,
    )
