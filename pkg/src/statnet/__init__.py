"""Watchdog-projection simulator for Boolean networks deployed in space.

A network of logically reversible gates is encoded as a diagonal constraint
projector and penalty Hamiltonian over qubit assignments; a continuous
projection ("watchdog") drive rotates a prepared ground state toward the
assignments that satisfy every constraint.  Subpackages:

- hilbert: dense state vectors, basis indexing, sector bookkeeping
- network: the gate/pin DSL, parsing, and a brute-force oracle
- statics: constraint masks and penalty Hamiltonians
- fock: fermionic mode algebra and (anti)symmetrizers
- dynamics: the watchdog stepper, drive schedules, closed forms
- protocol: prepare / drive / measure / decide with repetition statistics
- cli: the `statnet` command-line entry point
"""
from .errors import (
    DegenerateDynamicsError,
    DegenerateStateError,
    ParseError,
    StatnetError,
    UnpreparableNetworkError,
)
from .hilbert import (
    StateVector,
    apply_mask,
    basis_index,
    basis_state,
    index_assignment,
    inner,
    normalize,
    reduced_diag,
    sector_split,
)
from .network import (
    Gate,
    Network,
    Pin,
    TruthTable,
    brute_force_solutions,
    builtin_fig1,
    builtin_fig1_unsat,
    parse_network,
    render,
)
from .statics import (
    ConstraintMask,
    PenaltyHamiltonian,
    expected_energy,
    gate_hamiltonian,
    gate_mask,
    ground_space,
    network_hamiltonian,
    network_mask,
    pin_mask,
    total_hamiltonian,
)
from .dynamics import (
    DriveSchedule,
    Trajectory,
    closed_form_link,
    closed_form_triplet,
    evolve,
    q_rs_apply,
    triplet_watchdog_demo,
    watchdog_step,
)
from .protocol import (
    Preparation,
    ProtocolResult,
    prepare_ground,
    repetition_bound,
    run_once,
    run_protocol,
)

__version__ = "0.1.0"

__all__ = [
    "ConstraintMask",
    "DegenerateDynamicsError",
    "DegenerateStateError",
    "DriveSchedule",
    "Gate",
    "Network",
    "ParseError",
    "PenaltyHamiltonian",
    "Pin",
    "Preparation",
    "ProtocolResult",
    "StateVector",
    "StatnetError",
    "Trajectory",
    "TruthTable",
    "UnpreparableNetworkError",
    "apply_mask",
    "basis_index",
    "basis_state",
    "brute_force_solutions",
    "builtin_fig1",
    "builtin_fig1_unsat",
    "closed_form_link",
    "closed_form_triplet",
    "evolve",
    "expected_energy",
    "gate_hamiltonian",
    "gate_mask",
    "ground_space",
    "index_assignment",
    "inner",
    "network_hamiltonian",
    "network_mask",
    "normalize",
    "parse_network",
    "pin_mask",
    "prepare_ground",
    "q_rs_apply",
    "reduced_diag",
    "render",
    "repetition_bound",
    "run_once",
    "run_protocol",
    "sector_split",
    "total_hamiltonian",
    "triplet_watchdog_demo",
    "watchdog_step",
]
