"""Command-line front end.

Commands: check, solve-brute, simulate-link, simulate-triplet, run.
All outputs are byte-deterministic given (inputs, flags, seed); floats are
printed with 17 significant digits and lines end with '\\n'.  The env var
STATNET_SEED overrides --seed.

Exit codes: 0 success (satisfiable for solve-brute/run), 1 unsatisfiable,
2 error (parse failure, bad flags, degenerate dynamics).
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys

import numpy as np

from . import dynamics, network, protocol, statics
from .errors import StatnetError
from .hilbert import StateVector


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def _load_network(spec: str) -> network.Network:
    if spec in network.BUILTIN_NETWORKS:
        return network.BUILTIN_NETWORKS[spec]()
    with open(spec, encoding="utf-8") as fh:
        return network.parse_network(fh.read())


def _write(out_path: str | None, text: str) -> None:
    if out_path:
        with open(out_path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _trace_csv(traj: dynamics.Trajectory,
               closed_form=None) -> str:
    cols = ["t", "phi", "p0", "p1", "alpha_sq", "beta_sq", "energy",
            "step_overlap"]
    if closed_form is not None:
        cols.append("deviation_from_closed_form")
    lines = [",".join(cols)]
    for p in traj.points:
        phi = traj.schedule.phi(p.t)
        row = [p.t, phi, p.p0, p.p1, p.alpha_sq, p.beta_sq, p.energy,
               p.step_overlap]
        if closed_form is not None:
            ref = closed_form(traj.schedule.theta0, phi)
            row.append(float(np.abs(p.state.amps - ref.amps).max()))
        lines.append(",".join(_fmt(x) for x in row))
    return "\n".join(lines) + "\n"


def _schedule_from_args(args) -> dynamics.DriveSchedule:
    return dynamics.DriveSchedule(kind=args.schedule, theta0=args.theta,
                                  phi_final=args.phi_final, tau=args.tau,
                                  dt=args.dt if args.dt else 1e-3 * args.tau)


def cmd_check(args) -> int:
    net = _load_network(args.network)
    out = []
    out.append(f"nodes: {net.n_nodes} ({' '.join(net.nodes)})")
    for g in net.gates:
        mask = statics.gate_mask(net, g)
        ham = statics.gate_hamiltonian(net, g)
        dim_local = 2 ** len(g.nodes)
        local_dim = len(g.table.rows)
        out.append(f"gate {g.name}: in({','.join(g.in_nodes)}) "
                   f"out({','.join(g.out_nodes)}) "
                   f"subspace dim: {local_dim} of {dim_local}; "
                   f"ground-space size {len(statics.ground_space(ham))} "
                   f"of {net.dim}")
    for p in net.pins:
        out.append(f"pin {p.node}={p.value} ({p.kind})")
    if net.drive_node:
        out.append(f"drive node: {net.drive_node}")
    full = statics.network_mask(net, include_output_pins=True)
    partial = statics.network_mask(net, include_output_pins=False)
    out.append(f"solutions with all pins: {full.support_size()}")
    out.append(f"solutions without output pins: {partial.support_size()}")
    text = "\n".join(out) + "\n"
    if args.dump:
        dump = {
            "nodes": list(net.nodes),
            "masks": {g.name: statics.gate_mask(net, g).bits.tolist()
                      for g in net.gates},
            "pin_masks": {p.node: statics.pin_mask(net, p).bits.tolist()
                          for p in net.pins},
            "network_mask": full.bits.tolist(),
            "network_mask_no_output_pins": partial.bits.tolist(),
            "hamiltonian": statics.network_hamiltonian(net).energies.tolist(),
        }
        text = json.dumps(dump, sort_keys=True, indent=2) + "\n"
    _write(args.out, text)
    return 0


def cmd_solve_brute(args) -> int:
    net = _load_network(args.network)
    solutions = network.brute_force_solutions(net, include_pins=True)
    if solutions:
        _write(args.out, "\n".join(solutions) + "\n")
        return 0
    _write(args.out, "(none)\n")
    return 1


def cmd_simulate_link(args) -> int:
    schedule = _schedule_from_args(args)
    net = network.parse_network("nodes r s\nlink r -> s\n")
    mask = statics.gate_mask(net, net.gates[0])
    ham = statics.gate_hamiltonian(net, net.gates[0])
    psi0 = dynamics.closed_form_link(args.theta, 0.0)
    psi0 = StateVector(net.nodes, psi0.amps)
    traj = dynamics.evolve(psi0, mask, "r", schedule,
                           leak_model=args.leak, hamiltonian=ham,
                           enforce_mask=not args.no_mask)
    _write(args.out, _trace_csv(traj, closed_form=dynamics.closed_form_link))
    return 0


def cmd_simulate_triplet(args) -> int:
    schedule = _schedule_from_args(args)
    traj = dynamics.triplet_watchdog_demo(args.theta, schedule,
                                          drive=args.drive)
    _write(args.out, _trace_csv(traj, closed_form=dynamics.closed_form_triplet))
    return 0


def cmd_run(args) -> int:
    net = _load_network(args.network)
    schedule = _schedule_from_args(args)
    result = protocol.run_protocol(net, schedule, shots=args.shots,
                                   seed=args.seed, leak_model=args.leak)
    text = json.dumps(result.to_json_dict(), sort_keys=True, indent=2) + "\n"
    _write(args.out, text)
    return 0 if result.decision == "satisfiable" else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="statnet",
        description="Watchdog-projection simulator for constrained Boolean "
                    "networks deployed in space.")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, needs_network=True):
        if needs_network:
            p.add_argument("--network", default="fig1",
                           help="path to a network DSL file, or a builtin "
                                f"name ({'|'.join(network.BUILTIN_NETWORKS)})")
        p.add_argument("--dt", type=float, default=0.0,
                       help="step size (default tau/1000)")
        p.add_argument("--tau", type=float, default=1.0,
                       help="total drive duration")
        p.add_argument("--schedule", default="linear-ramp",
                       choices=dynamics.SCHEDULE_KINDS)
        p.add_argument("--theta", type=float, default=math.pi / 6,
                       help="initial mixing angle for the demos")
        p.add_argument("--phi-final", type=float, default=math.pi / 3,
                       help="total drive rotation for the demos")
        p.add_argument("--shots", type=int, default=100)
        p.add_argument("--seed", type=int, default=0)
        p.add_argument("--leak", default="none",
                       choices=("none", "uniform-excited"))
        p.add_argument("--format", default="csv", choices=("csv", "json"))
        p.add_argument("--out", default=None, help="output path (default stdout)")
        p.add_argument("--no-mask", action="store_true",
                       help="drop condition (i): drive without the projector")
        p.add_argument("--dump", action="store_true",
                       help="dump masks/Hamiltonian diagonals as JSON (check)")

    p_check = sub.add_parser("check", help="parse and report constraint statics")
    common(p_check)
    p_check.set_defaults(fn=cmd_check)

    p_brute = sub.add_parser("solve-brute", help="exhaustive SAT oracle")
    common(p_brute)
    p_brute.set_defaults(fn=cmd_solve_brute)

    p_link = sub.add_parser("simulate-link",
                            help="watchdog evolution of a single inverting wire")
    common(p_link, needs_network=False)
    p_link.set_defaults(fn=cmd_simulate_link)

    p_trip = sub.add_parser("simulate-triplet",
                            help="two-identical-particle symmetrizer demo")
    common(p_trip, needs_network=False)
    p_trip.add_argument("--drive", default="p1", choices=("p1", "p2", "both"))
    p_trip.set_defaults(fn=cmd_simulate_triplet)

    p_run = sub.add_parser("run", help="drive-relax-measure decision procedure")
    common(p_run)
    p_run.set_defaults(fn=cmd_run)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code not in (0, None) else 0
    env_seed = os.environ.get("STATNET_SEED")
    if env_seed is not None:
        try:
            args.seed = int(env_seed)
        except ValueError:
            sys.stderr.write(f"error: STATNET_SEED={env_seed!r} is not an integer\n")
            return 2
    try:
        return args.fn(args)
    except (StatnetError, OSError, ValueError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
