"""Line-oriented circuit formats and the key/value tree export.

Circuit files: a header line ``linear`` or ``circular``, then ``wires N``,
then one ``cnot <control> <target>`` per line in temporal (or cyclic)
order; ``#`` starts a comment. Cut files hold ``cut <wire> <gap>`` lines
plus an optional ``direction cw|ccw``. ICM files extend circuit files with
``init <q> zero|plus|y|a|in:<name>`` and
``measure <q> x|y|z|a|cfg:<b1>/<b2>|none`` lines; fault specs are
``smgf <gateId>``.

The kv tree format is self-describing: ``key value`` pairs and ``key {``
... ``}`` blocks; repeating a key yields a list. See the README for the
schemas of the objects exported here.
"""

from __future__ import annotations

from .circuits import (
    CircularCircuit,
    CNOTGate,
    CutSet,
    Direction,
    Gap,
    JoinRecord,
    LinearCircuit,
    LinearGate,
)
from .errors import CircuitSyntaxError
from .icm import (
    BasisState,
    FaultSpec,
    ICMCircuit,
    InitBasis,
    MeasBasis,
    QubitConfig,
    Role,
)


def _clean_lines(text: str):
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield ln, line


def parse_circuit(text: str) -> LinearCircuit | CircularCircuit:
    """Parse the circuit file format; times/positions follow listing order."""
    header = None
    wires = None
    pairs: list[tuple[int, int]] = []
    for ln, line in _clean_lines(text):
        tokens = line.split()
        if header is None:
            if tokens[0] not in ("linear", "circular") or len(tokens) != 1:
                raise CircuitSyntaxError(f"expected header 'linear' or 'circular', got {line!r}", ln)
            header = tokens[0]
            continue
        if tokens[0] == "wires":
            if wires is not None or len(tokens) != 2 or not tokens[1].isdigit():
                raise CircuitSyntaxError(f"bad wires line {line!r}", ln)
            wires = int(tokens[1])
            continue
        if tokens[0] == "cnot":
            if wires is None:
                raise CircuitSyntaxError("'wires N' must precede gates", ln)
            if len(tokens) != 3:
                raise CircuitSyntaxError(f"bad cnot line {line!r}", ln)
            try:
                pairs.append((int(tokens[1]), int(tokens[2])))
            except ValueError:
                raise CircuitSyntaxError(f"bad cnot line {line!r}", ln) from None
            continue
        raise CircuitSyntaxError(f"unknown directive {tokens[0]!r}", ln)
    if header is None:
        raise CircuitSyntaxError("empty circuit source", 1)
    if wires is None:
        raise CircuitSyntaxError("missing 'wires N' line", 1)
    if header == "linear":
        return LinearCircuit(
            n_qubits=wires,
            gates=tuple(
                LinearGate(control=c, target=t, time=i) for i, (c, t) in enumerate(pairs)
            ),
        )
    return CircularCircuit(
        wires=wires,
        gates=tuple(
            CNOTGate(id=i, control=c, target=t, position=i) for i, (c, t) in enumerate(pairs)
        ),
    )


def format_circuit(c: LinearCircuit | CircularCircuit) -> str:
    if isinstance(c, CircularCircuit):
        lines = ["circular", f"wires {c.wires}"]
        lines += [f"cnot {g.control} {g.target}" for g in c.gates]
    else:
        lines = ["linear", f"wires {c.n_qubits}"]
        lines += [f"cnot {g.control} {g.target}" for g in c.gates]
    return "\n".join(lines) + "\n"


def parse_cut_file(text: str) -> tuple[CutSet, Direction | None]:
    gaps: list[Gap] = []
    direction = None
    for ln, line in _clean_lines(text):
        tokens = line.split()
        if tokens[0] == "cut" and len(tokens) == 3:
            try:
                gaps.append(Gap(int(tokens[1]), int(tokens[2])))
            except ValueError:
                raise CircuitSyntaxError(f"bad cut line {line!r}", ln) from None
        elif tokens[0] == "direction" and len(tokens) == 2:
            try:
                direction = Direction.parse(tokens[1])
            except ValueError:
                raise CircuitSyntaxError(f"bad direction {tokens[1]!r}", ln) from None
        else:
            raise CircuitSyntaxError(f"bad cut-file line {line!r}", ln)
    return CutSet.of(gaps), direction


def format_cut_set(cuts: CutSet, direction: Direction | None = None) -> str:
    lines = [f"cut {g.wire} {g.index}" for g in cuts.sorted_gaps()]
    if direction is not None:
        lines.append(f"direction {direction.value}")
    return "\n".join(lines) + "\n"


def _parse_init(token: str, ln: int) -> InitBasis:
    if token.startswith("in:"):
        name = token[3:]
        if not name:
            raise CircuitSyntaxError("empty input name", ln)
        return InitBasis.symbolic(name)
    try:
        return InitBasis(BasisState(token))
    except ValueError:
        raise CircuitSyntaxError(f"unknown init basis {token!r}", ln) from None


def _parse_meas(token: str, ln: int) -> MeasBasis:
    if token.startswith("cfg:"):
        parts = token[4:].split("/")
        if len(parts) != 2:
            raise CircuitSyntaxError(f"bad configurable basis {token!r}", ln)
        try:
            return MeasBasis.cfg(parts[0], parts[1])
        except ValueError:
            raise CircuitSyntaxError(f"bad configurable basis {token!r}", ln) from None
    if token in ("x", "y", "z", "a", "none"):
        return MeasBasis(token)
    raise CircuitSyntaxError(f"unknown measurement basis {token!r}", ln)


def parse_icm_file(text: str) -> tuple[ICMCircuit, list[FaultSpec]]:
    """Parse a circuit file extended with init/measure/smgf lines.

    Qubits default to symbolic input ``q<i>`` with no measurement.
    """
    circuit_lines = []
    init_map: dict[int, InitBasis] = {}
    meas_map: dict[int, MeasBasis] = {}
    faults: list[FaultSpec] = []
    for ln, line in _clean_lines(text):
        tokens = line.split()
        if tokens[0] == "init" and len(tokens) == 3:
            init_map[int(tokens[1])] = _parse_init(tokens[2], ln)
        elif tokens[0] == "measure" and len(tokens) == 3:
            meas_map[int(tokens[1])] = _parse_meas(tokens[2], ln)
        elif tokens[0] == "smgf" and len(tokens) == 2:
            faults.append(FaultSpec(gate=int(tokens[1])))
        else:
            circuit_lines.append(line)
    circuit = parse_circuit("\n".join(circuit_lines))
    if isinstance(circuit, CircularCircuit):
        raise CircuitSyntaxError("ICM files describe linear circuits", 1)
    configs = []
    for q in range(circuit.n_qubits):
        init = init_map.get(q, InitBasis.symbolic(f"q{q}"))
        meas = meas_map.get(q, MeasBasis.none())
        if init.is_symbolic:
            role = Role.INPUT
        elif meas.kind == "none":
            role = Role.OUTPUT
        else:
            role = Role.ANCILLA
        configs.append(QubitConfig(role, init, meas))
    return ICMCircuit(circuit=circuit, configs=tuple(configs)), faults


def format_icm(icm: ICMCircuit, faults=()) -> str:
    lines = [format_circuit(icm.circuit).rstrip("\n")]
    for q, cfg in enumerate(icm.configs):
        lines.append(f"init {q} {cfg.init.text}")
    for q, cfg in enumerate(icm.configs):
        if cfg.meas.kind != "none":
            lines.append(f"measure {q} {cfg.meas.text}")
    for f in faults:
        lines.append(f"smgf {f.gate}")
    return "\n".join(lines) + "\n"


# --- key/value tree -------------------------------------------------------


def kv_dumps(tree: dict) -> str:
    """Serialize a nested dict of scalars/lists/dicts as an indented tree."""
    out: list[str] = []

    def emit(key: str, value, depth: int):
        pad = "  " * depth
        if isinstance(value, dict):
            out.append(f"{pad}{key} {{")
            for k, v in value.items():
                emit(k, v, depth + 1)
            out.append(f"{pad}}}")
        elif isinstance(value, (list, tuple)):
            for item in value:
                emit(key, item, depth)
        else:
            out.append(f"{pad}{key} {value}")

    for k, v in tree.items():
        emit(k, v, 0)
    return "\n".join(out) + "\n"


def kv_loads(text: str) -> dict:
    """Parse the kv tree format back into nested dicts (repeats -> lists)."""
    root: dict = {}
    stack = [root]
    for ln, line in _clean_lines(text):
        if line == "}":
            if len(stack) == 1:
                raise CircuitSyntaxError("unbalanced '}'", ln)
            stack.pop()
            continue
        if line.endswith("{"):
            key = line[:-1].strip()
            node: dict = {}
            _kv_insert(stack[-1], key, node)
            stack.append(node)
            continue
        parts = line.split(None, 1)
        if len(parts) != 2:
            raise CircuitSyntaxError(f"bad kv line {line!r}", ln)
        _kv_insert(stack[-1], parts[0], _kv_scalar(parts[1]))
    if len(stack) != 1:
        raise CircuitSyntaxError("unclosed block", 1)
    return root


def _kv_insert(node: dict, key: str, value) -> None:
    if key in node:
        existing = node[key]
        if isinstance(existing, list):
            existing.append(value)
        else:
            node[key] = [existing, value]
    else:
        node[key] = value


def _kv_scalar(token: str):
    token = token.strip()
    try:
        return int(token)
    except ValueError:
        return token


def _as_list(value) -> list:
    if value is None:
        return []
    return value if isinstance(value, list) else [value]


def circuit_to_kv(c: LinearCircuit | CircularCircuit) -> dict:
    if isinstance(c, CircularCircuit):
        return {
            "circuit": {
                "kind": "circular",
                "wires": c.wires,
                "gate": [
                    {"id": g.id, "control": g.control, "target": g.target, "position": g.position}
                    for g in c.gates
                ],
            }
        }
    return {
        "circuit": {
            "kind": "linear",
            "qubits": c.n_qubits,
            "gate": [
                {"control": g.control, "target": g.target, "time": g.time}
                for g in c.gates
            ],
        }
    }


def circuit_from_kv(tree: dict) -> LinearCircuit | CircularCircuit:
    node = tree["circuit"]
    gates = _as_list(node.get("gate"))
    if node["kind"] == "circular":
        return CircularCircuit(
            wires=node["wires"],
            gates=tuple(
                CNOTGate(
                    id=g.get("id", i),
                    control=g["control"],
                    target=g["target"],
                    position=g.get("position", i),
                )
                for i, g in enumerate(gates)
            ),
        )
    return LinearCircuit(
        n_qubits=node["qubits"],
        gates=tuple(
            LinearGate(control=g["control"], target=g["target"], time=g.get("time", i))
            for i, g in enumerate(gates)
        ),
    )


def cut_set_to_kv(cuts: CutSet, direction: Direction | None = None) -> dict:
    node: dict = {
        "cut": [{"wire": g.wire, "gap": g.index} for g in cuts.sorted_gaps()],
    }
    if direction is not None:
        node["direction"] = direction.value
    return {"cuts": node}


def cut_set_from_kv(tree: dict) -> tuple[CutSet, Direction | None]:
    node = tree["cuts"]
    gaps = [Gap(item["wire"], item["gap"]) for item in _as_list(node.get("cut"))]
    direction = Direction.parse(node["direction"]) if "direction" in node else None
    return CutSet.of(gaps), direction


def join_record_to_kv(record: JoinRecord) -> dict:
    return {
        "joins": {
            "join": [{"consumer": c, "producer": p} for c, p in record.joins],
            "loop": [{"consumer": c, "producer": p} for c, p in record.loops],
            "wire": [
                {"qubit": q, "wire": w} for q, w in enumerate(record.wire_of)
            ],
            "seam": [
                {"wire": g.wire, "gap": g.index} for g in record.seam.sorted_gaps()
            ],
        }
    }


def join_record_from_kv(tree: dict) -> JoinRecord:
    node = tree["joins"]
    joins = tuple((j["consumer"], j["producer"]) for j in _as_list(node.get("join")))
    loops = tuple((j["consumer"], j["producer"]) for j in _as_list(node.get("loop")))
    wire_items = sorted(_as_list(node.get("wire")), key=lambda w: w["qubit"])
    seam = CutSet.of(Gap(g["wire"], g["gap"]) for g in _as_list(node.get("seam")))
    return JoinRecord(
        joins=joins,
        loops=loops,
        wire_of=tuple(w["wire"] for w in wire_items),
        seam=seam,
    )
