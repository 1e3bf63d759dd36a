"""Circular CNOT circuits: parity models, cuts, ICM construction, oracles."""

from .circuits import (
    ArcOrigin,
    CircularCircuit,
    CNOTGate,
    CutPoint,
    CutSet,
    Direction,
    Gap,
    JoinRecord,
    LinearCircuit,
    LinearGate,
    circularize,
    cyclic_equal,
    enumerate_cut_points,
    linearize,
    radial_slots,
    validate_cut_set,
)
from .icm import (
    BasisState,
    FaultPatch,
    FaultSpec,
    ICMCircuit,
    InitBasis,
    MeasBasis,
    QubitConfig,
    Role,
    configure,
    faulted_transformations,
    gadget,
    inject_smgf,
    strip_and_circularize,
    toffoli_decomposition,
    translate_to_icm,
)
from .model import (
    BooleanModel,
    Clause,
    ClauseKind,
    ModelKind,
    ParitySystem,
    SegmentId,
    apply_cuts,
    build_combined_model,
    build_model,
    check_commutation_invariance,
    derive_transformations,
    pin_selectors,
    propagate,
    search_cuts,
    to_parity_system,
)
from .dot import export_dot
from .pauli import (
    PauliString,
    conjugate_cnot,
    equivalent_up_to_sign,
    oracle_map,
    propagate_pauli,
)
from .stabmap import StabiliserMap
from .statevec import fidelity, reduced_density, statevector_run
from .textio import (
    format_circuit,
    format_cut_set,
    format_icm,
    parse_circuit,
    parse_cut_file,
    parse_icm_file,
)

__all__ = [name for name in dir() if not name.startswith("_")]
