"""Input-to-output stabiliser mapping of a CNOT circuit, sign-free.

X flow and Z flow never mix in a CNOT-only circuit, so the map is two
independent GF(2) relations: for each input qubit, the set of output qubits
carrying an X (resp. Z) when that single Pauli enters.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from . import gf2
from .errors import CircuitSyntaxError, CountMismatch


@dataclass(frozen=True)
class StabiliserMap:
    n_qubits: int
    x_out: tuple[frozenset[int], ...]
    z_out: tuple[frozenset[int], ...]

    def __post_init__(self):
        if len(self.x_out) != self.n_qubits or len(self.z_out) != self.n_qubits:
            raise CountMismatch("one X row and one Z row per qubit required")

    def report(self) -> str:
        """Render as lines ``X<q> -> X{...}`` / ``Z<q> -> Z{...}``."""
        lines = []
        for kind, rows in (("X", self.x_out), ("Z", self.z_out)):
            for q, outs in enumerate(rows):
                inner = ",".join(str(o) for o in sorted(outs))
                lines.append(f"{kind}{q} -> {kind}{{{inner}}}")
        return "\n".join(lines)

    @classmethod
    def from_report(cls, text: str) -> "StabiliserMap":
        rows: dict[str, dict[int, frozenset[int]]] = {"X": {}, "Z": {}}
        pattern = re.compile(r"^([XZ])(\d+)\s*->\s*\1\{([\d,\s]*)\}$")
        for ln, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            m = pattern.match(line)
            if not m:
                raise CircuitSyntaxError(f"bad map line {line!r}", line=ln)
            kind, q, body = m.group(1), int(m.group(2)), m.group(3)
            outs = frozenset(int(tok) for tok in body.replace(",", " ").split())
            rows[kind][q] = outs
        if sorted(rows["X"]) != sorted(rows["Z"]) or sorted(rows["X"]) != list(range(len(rows["X"]))):
            raise CountMismatch("map report must cover X and Z rows for qubits 0..n-1")
        n = len(rows["X"])
        return cls(
            n_qubits=n,
            x_out=tuple(rows["X"][q] for q in range(n)),
            z_out=tuple(rows["Z"][q] for q in range(n)),
        )

    def inverse(self) -> "StabiliserMap":
        """Map of the reversed circuit (CNOT lists are gate-wise self-inverse)."""
        def invert(rows: tuple[frozenset[int], ...]) -> tuple[frozenset[int], ...]:
            masks = [sum(1 << o for o in outs) for outs in rows]
            inv = gf2.invert(masks, self.n_qubits)
            return tuple(
                frozenset(j for j in range(self.n_qubits) if m >> j & 1) for m in inv
            )

        return StabiliserMap(self.n_qubits, invert(self.x_out), invert(self.z_out))
