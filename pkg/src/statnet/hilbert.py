"""Dense state vectors over an ordered-qubit tensor basis.

Bit convention, shared by every module: the first declared node is the most
significant bit of the basis index.  All values are immutable after
construction and all operations are pure functions.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateStateError

NORM_TOL = 1e-12


@dataclass(frozen=True)
class StateVector:
    """Complex amplitudes over the computational basis of the named nodes."""

    node_order: tuple[str, ...]
    amps: np.ndarray

    def __post_init__(self):
        if len(set(self.node_order)) != len(self.node_order):
            raise ValueError(f"duplicate nodes in {self.node_order}")
        amps = np.asarray(self.amps, dtype=complex)
        amps.setflags(write=False)
        object.__setattr__(self, "amps", amps)
        if amps.shape != (2 ** len(self.node_order),):
            raise ValueError(
                f"amplitude array of shape {amps.shape} does not match "
                f"{len(self.node_order)} nodes"
            )

    @property
    def dim(self) -> int:
        return self.amps.shape[0]

    @property
    def n_nodes(self) -> int:
        return len(self.node_order)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amps))

    def node_position(self, node: str) -> int:
        try:
            return self.node_order.index(node)
        except ValueError:
            raise ValueError(f"unknown node {node!r}") from None


@dataclass(frozen=True)
class SectorDiag:
    """Diagonal of one node's reduced density matrix."""

    node: str
    p0: float
    p1: float


def basis_index(node_order: tuple[str, ...], assignment: str) -> int:
    """Basis index of a bitstring assignment (first node = MSB)."""
    if len(assignment) != len(node_order):
        raise ValueError(
            f"assignment {assignment!r} has length {len(assignment)}, "
            f"expected {len(node_order)}"
        )
    if not set(assignment) <= {"0", "1"}:
        raise ValueError(f"assignment {assignment!r} is not binary")
    return int(assignment, 2)


def index_assignment(node_order: tuple[str, ...], index: int) -> str:
    """Inverse of basis_index."""
    return format(index, f"0{len(node_order)}b")


def basis_state(node_order: tuple[str, ...], assignment: str) -> StateVector:
    """Unit amplitude on one computational basis vector."""
    amps = np.zeros(2 ** len(node_order), dtype=complex)
    amps[basis_index(node_order, assignment)] = 1.0
    return StateVector(tuple(node_order), amps)


def inner(a: StateVector, b: StateVector) -> complex:
    """<a|b>, conjugate-linear in the first argument."""
    if a.node_order != b.node_order:
        raise ValueError("state vectors live on different node orders")
    return complex(np.vdot(a.amps, b.amps))


def normalize(v: StateVector) -> StateVector:
    n = v.norm()
    if n < NORM_TOL:
        raise DegenerateStateError("cannot normalize a (near-)zero vector")
    return StateVector(v.node_order, v.amps / n)


def apply_mask(v: StateVector, mask) -> StateVector:
    """Project onto a diagonal 0/1 mask.  Result is not renormalized."""
    if mask.dim != v.dim:
        raise ValueError(f"mask dim {mask.dim} != state dim {v.dim}")
    return StateVector(v.node_order, v.amps * mask.bits)


def node_bit_values(n_nodes: int, position: int, dim: int | None = None) -> np.ndarray:
    """Bit of the node at `position` for every basis index, as a 0/1 array."""
    if dim is None:
        dim = 2 ** n_nodes
    return (np.arange(dim) >> (n_nodes - 1 - position)) & 1


def reduced_diag(v: StateVector, node: str) -> SectorDiag:
    """Diagonal of the partial trace over all nodes but `node`."""
    bits = node_bit_values(v.n_nodes, v.node_position(node))
    probs = np.abs(v.amps) ** 2
    p1 = float(probs[bits == 1].sum())
    p0 = float(probs[bits == 0].sum())
    return SectorDiag(node, p0, p1)


def sector_split(v: StateVector, node: str) -> tuple[StateVector, StateVector]:
    """Exact decomposition v = c0 + c1 by the value of one node's bit."""
    bits = node_bit_values(v.n_nodes, v.node_position(node))
    c0 = np.where(bits == 0, v.amps, 0)
    c1 = np.where(bits == 1, v.amps, 0)
    return StateVector(v.node_order, c0), StateVector(v.node_order, c1)
