"""Constraint masks and penalty Hamiltonians (all diagonal operators)."""
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from statnet.hilbert import StateVector, basis_index, basis_state
from statnet.network import (
    brute_force_solutions,
    builtin_fig1,
    builtin_fig1_unsat,
    parse_network,
)
from statnet.statics import (
    ConstraintMask,
    expected_energy,
    gate_hamiltonian,
    gate_mask,
    ground_space,
    mask_to_hamiltonian,
    network_hamiltonian,
    network_mask,
    one_qubit_hamiltonian,
    pin_hamiltonian,
    pin_mask,
    total_hamiltonian,
)

LINK_NET = parse_network("nodes r s\nlink r -> s\n")
XOR_NET = parse_network(
    "nodes t u v\ngate x in(t,u) out(v) { 00->0 ; 01->1 ; 10->1 ; 11->0 }\n")


def test_link_mask_bits():
    mask = gate_mask(LINK_NET, LINK_NET.gates[0])
    assert np.array_equal(mask.bits, [0, 1, 1, 0])


def test_xor_mask_support():
    mask = gate_mask(XOR_NET, XOR_NET.gates[0])
    assert mask.support() == [0b000, 0b011, 0b101, 0b110]


def test_all_patterns_gate_gives_all_ones():
    from statnet.network import Gate, Network, TruthTable
    table = TruthTable(2, 0, (("00", ""), ("01", ""), ("10", ""), ("11", "")))
    net = Network(("a", "b"), (Gate("free", ("a", "b"), (), table),))
    assert gate_mask(net, net.gates[0]).support_size() == 4


def test_constant_output_gate_mask():
    net = parse_network("nodes a b\ngate g in(a) out(b) { 0->0 ; 1->0 }\n")
    mask = gate_mask(net, net.gates[0])
    assert mask.support() == [0, 2]


def test_pin_mask_half_space():
    net = builtin_fig1()
    assert pin_mask(net, net.pin("b")).support_size() == 128


def test_pin_mask_single_node():
    net = parse_network("nodes a\nfix a=0\n")
    assert np.array_equal(pin_mask(net, net.pins[0]).bits, [1, 0])


def test_pin_conjunction_32():
    net = builtin_fig1()
    bits = np.ones(net.dim)
    for p in net.pins:
        bits *= pin_mask(net, p).bits
    assert bits.sum() == 32


def test_network_mask_unique_solution():
    net = builtin_fig1()
    mask = network_mask(net, include_output_pins=True)
    assert mask.support() == [basis_index(net.nodes, "11101011")]


def test_network_mask_without_output_pins():
    net = builtin_fig1()
    mask = network_mask(net, include_output_pins=False)
    assert mask.support() == [basis_index(net.nodes, "01010000"),
                              basis_index(net.nodes, "11101011")]


def test_network_mask_no_constraints_all_ones():
    net = parse_network("nodes a b\n")
    assert network_mask(net).support_size() == 4


def test_gate_hamiltonian_zero_on_rows():
    h = gate_hamiltonian(LINK_NET, LINK_NET.gates[0])
    v = basis_state(("r", "s"), "01")
    assert expected_energy(v, h) == 0.0


def test_gate_hamiltonian_penalty_off_rows():
    h = gate_hamiltonian(LINK_NET, LINK_NET.gates[0], energy=2.5)
    assert expected_energy(basis_state(("r", "s"), "00"), h) == 2.5


def test_gate_hamiltonian_per_pattern_overrides():
    h = gate_hamiltonian(LINK_NET, LINK_NET.gates[0],
                         overrides={"00": 3.0, "11": 4.0})
    assert np.array_equal(h.energies, [3.0, 0.0, 0.0, 4.0])


def test_gate_hamiltonian_rejects_nonpositive():
    with pytest.raises(ValueError):
        gate_hamiltonian(LINK_NET, LINK_NET.gates[0], energy=0.0)
    with pytest.raises(ValueError):
        gate_hamiltonian(LINK_NET, LINK_NET.gates[0], overrides={"00": -1.0})


def test_one_qubit_hamiltonian_scales_with_sector_mass():
    theta = 0.3
    e_z = 0.01
    h = one_qubit_hamiltonian(("r", "s"), "r", excited_value=0, energy=e_z)
    v = StateVector(("r", "s"),
                    np.array([0, math.cos(theta), math.sin(theta), 0]))
    assert expected_energy(v, h) == pytest.approx(e_z * math.cos(theta) ** 2)


def test_one_qubit_hamiltonian_eigenstates():
    h = one_qubit_hamiltonian(("r", "s"), "s", excited_value=1, energy=0.7)
    assert expected_energy(basis_state(("r", "s"), "00"), h) == 0.0
    assert expected_energy(basis_state(("r", "s"), "01"), h) == 0.7


def test_total_hamiltonian_zero_set_is_intersection():
    net = builtin_fig1()
    parts = [gate_hamiltonian(net, g) for g in net.gates]
    parts += [pin_hamiltonian(net, p) for p in net.pins if p.kind == "input"]
    assert len(ground_space(total_hamiltonian(parts))) == 2


def test_total_with_output_pin_singles_out_solution():
    net = builtin_fig1()
    h = network_hamiltonian(net, include_output_pins=True)
    assert ground_space(h) == [basis_index(net.nodes, "11101011")]


def test_total_hamiltonian_empty_list():
    h = total_hamiltonian([], dim=4)
    assert np.array_equal(h.energies, np.zeros(4))


def test_link_state_energy_zero_for_any_theta():
    h = gate_hamiltonian(LINK_NET, LINK_NET.gates[0])
    for theta in np.linspace(0, math.pi / 2, 7):
        v = StateVector(("r", "s"),
                        np.array([0, math.cos(theta), math.sin(theta), 0]))
        assert expected_energy(v, h) == 0.0


def test_expected_energy_uniform_state():
    h = mask_to_hamiltonian(ConstraintMask(4, np.array([1, 1, 0, 0])), energy=3.0)
    v = StateVector(("r", "s"), np.full(4, 0.5, dtype=complex))
    assert expected_energy(v, h) == pytest.approx(1.5)


def test_ground_space_link():
    h = gate_hamiltonian(LINK_NET, LINK_NET.gates[0])
    assert ground_space(h) == [1, 2]


def test_ground_space_xor_dimension_four():
    h = gate_hamiltonian(XOR_NET, XOR_NET.gates[0])
    assert len(ground_space(h)) == 4


def test_ground_space_zero_hamiltonian():
    h = total_hamiltonian([], dim=8)
    assert ground_space(h) == list(range(8))


def test_mask_rejects_non_binary():
    with pytest.raises(ValueError):
        ConstraintMask(4, np.array([0, 2, 1, 0]))


def test_unsat_network_mask_is_empty():
    assert network_mask(builtin_fig1_unsat()).support_size() == 0


@st.composite
def fig1_masks(draw):
    net = builtin_fig1()
    which = draw(st.integers(0, len(net.gates) + len(net.pins) - 1))
    if which < len(net.gates):
        return gate_mask(net, net.gates[which])
    return pin_mask(net, net.pins[which - len(net.gates)])


@given(fig1_masks())
def test_masks_idempotent(mask):
    assert np.array_equal(mask.bits * mask.bits, mask.bits)


@given(fig1_masks(), fig1_masks())
def test_masks_commute(m1, m2):
    assert np.array_equal(m1.bits * m2.bits, m2.bits * m1.bits)


@given(st.booleans())
def test_mask_matches_oracle(include_pins):
    net = builtin_fig1()
    mask = network_mask(net, include_output_pins=True) if include_pins \
        else ConstraintMask(net.dim, np.prod(
            [gate_mask(net, g).bits for g in net.gates], axis=0))
    oracle = brute_force_solutions(net, include_pins=include_pins)
    assert [basis_index(net.nodes, a) for a in oracle] == mask.support()


def test_ground_space_equals_mask_support():
    net = builtin_fig1()
    h = network_hamiltonian(net, include_output_pins=True)
    mask = network_mask(net, include_output_pins=True)
    assert ground_space(h) == mask.support()
