"""Command-line front end.

Exit status: 0 on success, 1 on a domain error (printed to stderr with its
stable error code), 2 on usage errors. Output is byte-identical for
identical inputs and flags.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import textio
from .circuits import (
    CircularCircuit,
    CutSet,
    Direction,
    LinearCircuit,
    LinearGate,
    circularize,
    enumerate_cut_points,
    linearize,
    validate_cut_set,
)
from .dot import export_dot
from .errors import CircnotError, CircuitSyntaxError
from .icm import FaultSpec, faulted_transformations, gadget, translate_to_icm
from .model import (
    ModelKind,
    apply_cuts,
    build_combined_model,
    build_model,
    derive_transformations,
    search_cuts,
    to_parity_system,
)
from .stabmap import StabiliserMap

GADGET_NAMES = ("teleport", "t", "p", "v", "bell", "measurez", "remotecnot", "sdt")


def _read(path: str) -> str:
    return Path(path).read_text(encoding="utf-8")


def _load_circuit(path: str):
    return textio.parse_circuit(_read(path))


def _load_cuts(args) -> tuple[CutSet, Direction]:
    cuts, file_dir = textio.parse_cut_file(_read(args.cuts))
    direction = Direction.parse(args.dir) if args.dir else (file_dir or Direction.CW)
    return cuts, direction


def _require_circular(circuit) -> CircularCircuit:
    if not isinstance(circuit, CircularCircuit):
        raise CircnotError("this command needs a circular circuit")
    return circuit


def _require_linear(circuit) -> LinearCircuit:
    if not isinstance(circuit, LinearCircuit):
        raise CircnotError("this command needs a linear circuit")
    return circuit


def _emit(out, text: str) -> None:
    out.write(text if text.endswith("\n") else text + "\n")


def cmd_parse(args, out) -> int:
    circuit = _load_circuit(args.circuit)
    if args.format == "kv":
        _emit(out, textio.kv_dumps(textio.circuit_to_kv(circuit)))
    else:
        _emit(out, textio.format_circuit(circuit))
    return 0


def cmd_cuts(args, out) -> int:
    circuit = _require_circular(_load_circuit(args.circuit))
    if args.validate:
        cuts, _ = textio.parse_cut_file(_read(args.validate))
        validate_cut_set(circuit, cuts)
        _emit(out, f"valid ({len(cuts)} cuts)")
        return 0
    for point in enumerate_cut_points(circuit):
        _emit(out, f"cut {point.gap.wire} {point.gap.index}")
    return 0


def cmd_linearize(args, out) -> int:
    circuit = _require_circular(_load_circuit(args.circuit))
    cuts, direction = _load_cuts(args)
    lin = linearize(circuit, cuts, direction)
    if args.format == "kv":
        _emit(out, textio.kv_dumps(textio.circuit_to_kv(lin)))
    else:
        _emit(out, textio.format_circuit(lin))
    return 0


def cmd_circularize(args, out) -> int:
    circuit = _require_linear(_load_circuit(args.circuit))
    circ, record = circularize(circuit)
    if args.format == "kv":
        _emit(out, textio.kv_dumps(textio.circuit_to_kv(circ)))
        _emit(out, textio.kv_dumps(textio.join_record_to_kv(record)))
    else:
        _emit(out, textio.format_circuit(circ))
        for consumer, producer in record.joins:
            _emit(out, f"join q{consumer}.in <- q{producer}.out")
        for consumer, producer in record.loops:
            _emit(out, f"loop q{consumer}.in <- q{producer}.out")
        _emit(out, "wires " + " ".join(f"q{q}:w{w}" for q, w in enumerate(record.wire_of)))
    return 0


def cmd_model(args, out) -> int:
    circuit = _require_circular(_load_circuit(args.circuit))
    kind = {"x": ModelKind.X, "z": ModelKind.Z, "combined": ModelKind.COMBINED}[args.kind]
    model = build_combined_model(circuit) if kind is ModelKind.COMBINED else build_model(circuit, kind)
    if args.cuts:
        cuts, _ = textio.parse_cut_file(_read(args.cuts))
        model = apply_cuts(model, cuts)
    _emit(out, model.dump())
    if args.parity:
        _emit(out, to_parity_system(model).dump())
    return 0


def cmd_derive(args, out) -> int:
    circuit = _require_circular(_load_circuit(args.circuit))
    cuts, direction = _load_cuts(args)
    derived = derive_transformations(circuit, cuts, direction)
    _emit(out, derived.report())
    return 0


def cmd_search(args, out) -> int:
    circuit = _require_circular(_load_circuit(args.circuit))
    target = StabiliserMap.from_report(_read(args.target))
    results = search_cuts(circuit, target, args.max_cuts)
    for cuts, direction in results:
        gaps = " ".join(f"({g.wire},{g.index})" for g in cuts.sorted_gaps())
        _emit(out, f"cuts {gaps} direction {direction.value}")
    _emit(out, f"found {len(results)}")
    return 0


def cmd_icm(args, out) -> int:
    if args.gadget:
        icm = gadget(args.gadget)
    else:
        if not args.program:
            raise CircnotError("provide a program file or --gadget")
        gates, qubits = _parse_program(_read(args.program))
        icm = translate_to_icm(gates, qubits)
    _emit(out, textio.format_icm(icm))
    return 0


def cmd_fault(args, out) -> int:
    circuit = _require_circular(_load_circuit(args.circuit))
    cuts, direction = _load_cuts(args)
    result = faulted_transformations(circuit, cuts, direction, FaultSpec(gate=args.smgf))
    _emit(out, textio.format_cut_set(result.cuts))
    patch = result.patch
    _emit(
        out,
        f"ancilla wire {patch.wire} gaps ({patch.before_gap.index},{patch.after_gap.index})"
        f" init {patch.init.text}",
    )
    _emit(out, f"live-inputs {' '.join(str(q) for q in sorted(result.live_inputs))}")
    _emit(out, f"live-outputs {' '.join(str(q) for q in sorted(result.live_outputs))}")
    _emit(out, result.map.report())
    return 0


def cmd_export(args, out) -> int:
    circuit = _load_circuit(args.circuit)
    cuts = None
    if args.cuts:
        cuts, _ = textio.parse_cut_file(_read(args.cuts))
    _emit(out, export_dot(circuit, cuts))
    return 0


def cmd_check(args, out) -> int:
    """Randomized round-trip driver: circularize then seam-cut linearize."""
    rng = random.Random(args.seed)
    failures = 0
    done = 0
    while done < args.count:
        n = rng.randint(2, 8)
        m = rng.randint(n, 20)
        pairs = [tuple(rng.sample(range(n), 2)) for _ in range(m)]
        lin = LinearCircuit(
            n_qubits=n,
            gates=tuple(
                LinearGate(control=c, target=t, time=i) for i, (c, t) in enumerate(pairs)
            ),
        )
        if any(not lin.times_on(q) for q in range(n)):
            continue
        done += 1
        circ, record = circularize(lin)
        redone = linearize(circ, record.seam, Direction.CW)
        expected = [(record.wire_of[g.control], record.wire_of[g.target]) for g in lin.gates]
        if list(redone.gate_pairs()) != expected:
            failures += 1
            _emit(out, f"trial {done}: round trip failed")
    _emit(out, f"round-trip trials {args.count} failures {failures}")
    return 0 if failures == 0 else 1


def _parse_program(text: str) -> tuple[list[tuple], int]:
    qubits = None
    gates: list[tuple] = []
    for ln, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "qubits" and len(tokens) == 2:
            qubits = int(tokens[1])
        elif tokens[0] == "cnot" and len(tokens) == 3:
            gates.append(("cnot", int(tokens[1]), int(tokens[2])))
        elif tokens[0] in ("t", "tdg", "p", "pdg", "v", "h") and len(tokens) == 2:
            gates.append((tokens[0], int(tokens[1])))
        else:
            raise CircuitSyntaxError(f"bad program line {line!r}", ln)
    if qubits is None:
        raise CircuitSyntaxError("missing 'qubits N' line", 1)
    return gates, qubits


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="circnot",
        description="Circular CNOT circuit modelling, cutting, and ICM tools",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("parse", help="validate and reprint a circuit file")
    p.add_argument("circuit")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_parse)

    p = sub.add_parser("cuts", help="enumerate or validate cut points")
    p.add_argument("circuit")
    p.add_argument("--enumerate", action="store_true", default=True)
    p.add_argument("--validate", metavar="CUTFILE")
    p.set_defaults(func=cmd_cuts)

    p = sub.add_parser("linearize", help="cut a circular circuit open")
    p.add_argument("circuit")
    p.add_argument("--cuts", required=True)
    p.add_argument("--dir", choices=("cw", "ccw"))
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_linearize)

    p = sub.add_parser("circularize", help="close a linear circuit into loops")
    p.add_argument("circuit")
    p.add_argument("--format", choices=("text", "kv"), default="text")
    p.set_defaults(func=cmd_circularize)

    p = sub.add_parser("model", help="dump the parity model of a circular circuit")
    p.add_argument("circuit")
    p.add_argument("--kind", choices=("x", "z", "combined"), default="x")
    p.add_argument("--cuts")
    p.add_argument("--parity", action="store_true", help="also dump the 0/1 rows")
    p.set_defaults(func=cmd_model)

    p = sub.add_parser("derive", help="derive the stabiliser map of a cut circuit")
    p.add_argument("circuit")
    p.add_argument("--cuts", required=True)
    p.add_argument("--dir", choices=("cw", "ccw"))
    p.set_defaults(func=cmd_derive)

    p = sub.add_parser("search", help="find cut sets deriving a target map")
    p.add_argument("circuit")
    p.add_argument("--target", required=True)
    p.add_argument("--max-cuts", type=int, required=True)
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("icm", help="build ICM circuits from gadgets or programs")
    p.add_argument("program", nargs="?")
    p.add_argument("--gadget", choices=GADGET_NAMES)
    p.set_defaults(func=cmd_icm)

    p = sub.add_parser("fault", help="inject a single-missing-gate fault")
    p.add_argument("circuit")
    p.add_argument("--cuts", required=True)
    p.add_argument("--smgf", type=int, required=True, metavar="GATEID")
    p.add_argument("--dir", choices=("cw", "ccw"))
    p.set_defaults(func=cmd_fault)

    p = sub.add_parser("export", help="emit a DOT graph of a circuit")
    p.add_argument("circuit")
    p.add_argument("--cuts")
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("check", help="randomized round-trip property driver")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.set_defaults(func=cmd_check)

    return parser


def main(argv=None, out=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = out or sys.stdout
    try:
        return args.func(args, out)
    except CircnotError as err:
        print(f"error {err.code}: {err}", file=sys.stderr)
        return 1
    except FileNotFoundError as err:
        print(f"error file-not-found: {err}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
