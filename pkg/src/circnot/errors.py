"""Exception hierarchy with stable machine-readable error codes."""

from __future__ import annotations


class CircnotError(Exception):
    """Base class for all domain errors raised by this package."""

    code = "error"

    def __init__(self, message: str = "", **details):
        super().__init__(message or self.code)
        self.details = details


class CircuitSyntaxError(CircnotError):
    code = "syntax-error"

    def __init__(self, message: str, line: int):
        super().__init__(f"line {line}: {message}", line=line)
        self.line = line


class ControlEqualsTarget(CircnotError):
    code = "control-equals-target"


class WireOutOfRange(CircnotError):
    code = "wire-out-of-range"


class EmptyWire(CircnotError):
    """A circular wire carries no gate symbol; segmentation is undefined."""

    code = "empty-wire"

    def __init__(self, wires, join_record=None):
        super().__init__(f"wires without gate symbols: {sorted(wires)}")
        self.wires = tuple(sorted(wires))
        self.join_record = join_record


class EmptyCutSet(CircnotError):
    code = "empty-cut-set"


class DuplicateCut(CircnotError):
    code = "duplicate-cut"


class UnknownGap(CircnotError):
    code = "unknown-gap"


class NoRadialCut(CircnotError):
    """No angular slot is cut on every wire, so no valid circuit results."""

    code = "no-radial-cut"

    def __init__(self, message: str, missing_by_slot=None):
        super().__init__(message)
        # slot index -> wires lacking a cut in the gap spanning that slot
        self.missing_by_slot = missing_by_slot or {}


class UnknownGate(CircnotError):
    code = "unknown-gate"


class NotAdjacent(CircnotError):
    code = "not-adjacent"


class UnpinnedSelector(CircnotError):
    code = "unpinned-selector"


class Underdetermined(CircnotError):
    """The parity system leaves a free variable; a radial cut is missing."""

    code = "underdetermined"

    def __init__(self, message: str = "free variable remains", free=None):
        super().__init__(message)
        self.free = free


class Inconsistent(CircnotError):
    code = "inconsistent"


class BudgetTooSmall(CircnotError):
    code = "budget-too-small"


class CountMismatch(CircnotError):
    code = "count-mismatch"


class InvalidAncillaConfig(CircnotError):
    code = "invalid-ancilla-config"


class ZeroProbabilityOutcome(CircnotError):
    code = "zero-probability-outcome"


class TooManyQubits(CircnotError):
    code = "too-many-qubits"
