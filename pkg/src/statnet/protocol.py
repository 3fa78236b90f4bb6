"""End-to-end drive-relax-measure procedure with repetition statistics.

The ground state is constructed analytically as the uniform superposition of
every assignment satisfying the gates and the input pins (output pins are
withheld at preparation and enforced through the drive and the offline
check).  Each shot evolves that preparation until the drive node's sector
mass sits on the pinned output value, measures once in the computational
basis, and checks the sample offline against the full constraint set.
"""
from __future__ import annotations

import hashlib
import math
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import DriveSchedule, Trajectory, evolve
from .errors import DegenerateDynamicsError, UnpreparableNetworkError
from .hilbert import StateVector, basis_index, index_assignment, node_bit_values
from .network import Network, assignment_satisfies, render
from .statics import network_mask

# Reference per-shot success probability used for the stated confidence of a
# negative (unsatisfiable) decision: 1 - (1 - p_ref)^shots.
DEFAULT_P_GOOD_REF = 0.5


@dataclass(frozen=True)
class Preparation:
    state: StateVector
    n_sector0: int
    n_sector1: int
    theta: float | None

    @property
    def support_size(self) -> int:
        return self.n_sector0 + self.n_sector1


@dataclass(frozen=True)
class ProtocolResult:
    shots: int
    samples: tuple[str | None, ...]
    n_solutions: int
    decision: str  # "satisfiable" | "unsatisfiable" | "inconclusive"
    confidence: float
    seed: int
    good_universe_prob_final: float
    network_hash: str
    schedule: DriveSchedule

    def to_json_dict(self) -> dict:
        return {
            "network_hash": self.network_hash,
            "shots": self.shots,
            "seed": self.seed,
            "schedule": {
                "kind": self.schedule.kind,
                "theta0": self.schedule.theta0,
                "phi_final": self.schedule.phi_final,
                "tau": self.schedule.tau,
                "dt": self.schedule.dt,
            },
            "decision": self.decision,
            "confidence": self.confidence,
            "n_solutions": self.n_solutions,
            "samples": list(self.samples),
            "good_universe_prob_final": self.good_universe_prob_final,
        }


def network_hash(net: Network) -> str:
    return hashlib.sha256(render(net).encode()).hexdigest()[:16]


def _input_constrained_support(net: Network) -> list[str]:
    """Assignments satisfying every gate and every input pin."""
    pos = {n: i for i, n in enumerate(net.nodes)}
    input_pins = [p for p in net.pins if p.kind == "input"]
    support = []
    for k in range(net.dim):
        a = index_assignment(net.nodes, k)
        if not assignment_satisfies(net, a, include_pins=False):
            continue
        if all(a[pos[p.node]] == str(p.value) for p in input_pins):
            support.append(a)
    return support


def prepare_ground(net: Network,
                   weights: dict[str, complex] | None = None) -> Preparation:
    """Equal-phase superposition over the input-constrained solution set.

    `weights` optionally assigns unnormalized amplitudes per assignment, for
    experiments with non-uniform (e.g. exponentially rare) sectors.
    """
    support = _input_constrained_support(net)
    if not support:
        raise UnpreparableNetworkError(
            "no assignment satisfies the gates and input pins")
    amps = np.zeros(net.dim, dtype=complex)
    for a in support:
        amps[basis_index(net.nodes, a)] = weights.get(a, 0.0) if weights else 1.0
    norm = np.linalg.norm(amps)
    if norm == 0:
        raise UnpreparableNetworkError("supplied weights vanish on the support")
    state = StateVector(net.nodes, amps / norm)

    if net.drive_node is None:
        return Preparation(state, len(support), 0, None)
    pos = net.nodes.index(net.drive_node)
    n1 = sum(1 for a in support if a[pos] == "1")
    n0 = len(support) - n1
    probs = np.abs(state.amps) ** 2
    p1 = float(probs[node_bit_values(net.n_nodes, pos) == 1].sum())
    theta = math.asin(math.sqrt(min(p1, 1.0)))
    return Preparation(state, n0, n1, theta)


def _drive_schedule_for(net: Network, prep: Preparation,
                        schedule: DriveSchedule) -> DriveSchedule:
    """Fix theta0 from the preparation and phi_final from the output pin."""
    pin = net.pin(net.drive_node)
    target_angle = math.pi / 2 if pin.value == 1 else 0.0
    return replace(schedule, theta0=prep.theta,
                   phi_final=target_angle - prep.theta)


def run_once(net: Network, schedule: DriveSchedule, leak_model: str,
             rng: np.random.Generator,
             prep: Preparation | None = None) -> tuple[Trajectory, str]:
    """One drive-relax-measure shot; returns the trajectory and the sample."""
    if net.drive_node is None:
        raise ValueError("network has no drive node")
    if prep is None:
        prep = prepare_ground(net)
    mask = network_mask(net, include_output_pins=False)
    traj = evolve(prep.state, mask, net.drive_node,
                  _drive_schedule_for(net, prep, schedule),
                  leak_model=leak_model, record=False)
    sample = measure_sample(traj.final_state, rng)
    return traj, sample


def measure_sample(v: StateVector, rng: np.random.Generator) -> str:
    """One projective measurement in the computational basis."""
    probs = np.abs(v.amps) ** 2
    probs = probs / probs.sum()
    k = int(rng.choice(v.dim, p=probs))
    return index_assignment(v.node_order, k)


def run_protocol(net: Network, schedule: DriveSchedule, shots: int, seed: int,
                 leak_model: str = "none",
                 p_good_ref: float = DEFAULT_P_GOOD_REF) -> ProtocolResult:
    """Repeat run_once with per-shot derived rng streams and decide."""
    if shots < 1:
        raise ValueError("shots must be >= 1")
    prep = prepare_ground(net)
    samples: list[str | None] = []
    n_solutions = 0
    alpha_final = []
    for shot in range(shots):
        rng = np.random.default_rng([int(seed), shot])
        try:
            traj, sample = run_once(net, schedule, leak_model, rng, prep=prep)
        except DegenerateDynamicsError:
            samples.append(None)
            continue
        samples.append(sample)
        alpha_final.append(traj.points[-1].alpha_sq)
        if assignment_satisfies(net, sample, include_pins=True):
            n_solutions += 1

    if n_solutions > 0:
        decision, confidence = "satisfiable", 1.0
    elif any(s is not None for s in samples):
        decision = "unsatisfiable"
        confidence = 1.0 - (1.0 - p_good_ref) ** shots
    else:
        decision, confidence = "inconclusive", 0.0

    return ProtocolResult(
        shots=shots, samples=tuple(samples), n_solutions=n_solutions,
        decision=decision, confidence=confidence, seed=int(seed),
        good_universe_prob_final=float(np.mean(alpha_final)) if alpha_final else 0.0,
        network_hash=network_hash(net), schedule=schedule)


def repetition_bound(p_good: float, confidence: float) -> int:
    """Smallest n with 1 - (1 - p_good)^n >= confidence."""
    if not 0 < p_good <= 1:
        raise ValueError("p_good must lie in (0, 1]")
    if not 0 < confidence < 1:
        raise ValueError("confidence must lie in (0, 1)")
    if p_good == 1.0:
        return 1
    n = math.ceil(math.log(1.0 - confidence) / math.log(1.0 - p_good))
    # Guard against floating point sitting exactly on the boundary.
    while 1.0 - (1.0 - p_good) ** n < confidence:
        n += 1
    while n > 1 and 1.0 - (1.0 - p_good) ** (n - 1) >= confidence:
        n -= 1
    return n
