"""DOT graph export for circuit diagrams.

Wires become node chains (cycles for circular circuits), gates become
control-to-target edges, and cuts become marked nodes spliced into the
wire. Output is deterministic for identical inputs.
"""

from __future__ import annotations

from .circuits import CircularCircuit, CutSet, Gap, LinearCircuit

_SYMBOL_LABEL = {"control": "*", "target": "+"}


def export_dot(c: CircularCircuit | LinearCircuit, cuts: CutSet | None = None) -> str:
    if isinstance(c, CircularCircuit):
        return _circular_dot(c, cuts)
    return _linear_dot(c)


def _circular_dot(c: CircularCircuit, cuts: CutSet | None) -> str:
    cut_gaps = cuts.gaps() if cuts is not None else frozenset()
    lines = ["digraph circuit {", "  rankdir=LR;"]
    sym_nodes: dict[tuple[int, int], str] = {}
    for w in range(c.wires):
        for si, (pos, gi, kind) in enumerate(c.symbols(w)):
            name = f"w{w}s{si}"
            sym_nodes[(w, gi)] = name
            lines.append(
                f'  {name} [label="{_SYMBOL_LABEL[kind]}g{c.gates[gi].id}@{pos}" shape=circle];'
            )
    for w in range(c.wires):
        k = c.symbol_count(w)
        for si in range(k):
            nxt = (si + 1) % k
            src = f"w{w}s{si}"
            dst = f"w{w}s{nxt}"
            gap_name = f"cut_w{w}g{si}"
            if Gap(w, si) in cut_gaps:
                lines.append(f'  {gap_name} [label="cut" shape=box];')
                lines.append(f"  {src} -> {gap_name} [style=bold];")
                lines.append(f"  {gap_name} -> {dst} [style=bold];")
            else:
                lines.append(f"  {src} -> {dst} [style=bold];")
    for gi, g in enumerate(c.gates):
        lines.append(
            f"  {sym_nodes[(g.control, gi)]} -> {sym_nodes[(g.target, gi)]}"
            f' [style=dashed label="g{g.id}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"


def _linear_dot(c: LinearCircuit) -> str:
    lines = ["digraph circuit {", "  rankdir=LR;"]
    chains: list[list[str]] = []
    for q in range(c.n_qubits):
        lines.append(f'  q{q}_in [label="q{q} in" shape=plaintext];')
        chains.append([f"q{q}_in"])
    node_of: dict[tuple[int, int], str] = {}
    for g in c.gates:
        for q, kind in ((g.control, "control"), (g.target, "target")):
            name = f"q{q}t{g.time}"
            node_of[(q, g.time)] = name
            lines.append(f'  {name} [label="{_SYMBOL_LABEL[kind]}t{g.time}" shape=circle];')
            chains[q].append(name)
    for q in range(c.n_qubits):
        lines.append(f'  q{q}_out [label="q{q} out" shape=plaintext];')
        chains[q].append(f"q{q}_out")
        for src, dst in zip(chains[q], chains[q][1:]):
            lines.append(f"  {src} -> {dst} [style=bold];")
    for g in c.gates:
        lines.append(
            f"  {node_of[(g.control, g.time)]} -> {node_of[(g.target, g.time)]}"
            f' [style=dashed label="t{g.time}"];'
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
