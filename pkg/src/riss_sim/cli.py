"""Command-line entry point ``riss-sim``.

Exit codes: 0 success, 2 invalid configuration, 3 infeasible placement.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .allocation import communication_allocation, sensing_allocation
from .beamforming import path_coefficients
from .channel import make_channels
from .error_analysis import error_sweep, gain_profile
from .errors import InfeasiblePlacementError, InvalidInputError
from .experiments import default_spec, run
from .placement import orthogonal_grid, quantize_uniform
from .scene import db_to_linear, default_scenario, load_scenario, scenario_hash
from .sensing_range import coverage

SEED_ENV = "RISS_SIM_SEED"
EXIT_INVALID = 2
EXIT_INFEASIBLE = 3


def _resolve_seed(arg: int | None) -> tuple[int, str]:
    if arg is not None:
        return arg, "cli"
    env = os.environ.get(SEED_ENV)
    if env is not None:
        try:
            return int(env), f"env:{SEED_ENV}"
        except ValueError:
            raise InvalidInputError(f"{SEED_ENV} must be an integer, got {env!r}") from None
    return 0, "default"


def _scenario(path: str | None):
    return load_scenario(path) if path else default_scenario()


def _comm_powers(scenario):
    return communication_allocation(path_coefficients(scenario), scenario.rf.total_power)


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def cmd_place(args, out) -> None:
    slots = args.slots if args.slots is not None else max(1, args.antennas // 2 - 1)
    grid = orthogonal_grid(slots, args.rr, args.antennas)
    sines = grid.sines()
    w = _writer(out)
    w.writerow(["slot_index", "x_m", "sine"])
    for i in quantize_uniform(args.n, grid):
        w.writerow([i, repr(float(grid.slots[i])), repr(float(sines[i]))])


def cmd_allocate(args, out) -> None:
    sc = _scenario(args.scenario)
    if args.mode == "sensing":
        alloc = sensing_allocation([l.rho_b2r for l in make_channels(sc)], sc.rf.total_power)
    else:
        alloc = _comm_powers(sc)
    w = _writer(out)
    w.writerow(["riss_index", "eta_w", "share"])
    for k, (p, s) in enumerate(zip(alloc.powers, alloc.shares)):
        w.writerow([k, repr(float(p)), repr(float(s))])


def cmd_sense_range(args, out) -> None:
    sc = _scenario(args.scenario)
    seed, source = _resolve_seed(args.seed)
    gamma = db_to_linear(args.gamma_db) if args.gamma_db is not None else None
    alloc = sensing_allocation([l.rho_b2r for l in make_channels(sc)], sc.rf.total_power)
    rep = coverage(sc, alloc.powers, gamma, samples=args.samples, seed=seed, workers=args.workers)
    out.write(f"# riss-sim {__version__} sense-range scenario={scenario_hash(sc)} "
              f"seed={seed} seed_source={source} samples={args.samples}\n")
    w = _writer(out)
    w.writerow(["riss_index", "radius_m"])
    for k, r in enumerate(rep.radii):
        w.writerow([k, repr(float(r))])
    w.writerow(["A_union_m3", "A_sum_m3", "stderr"])
    w.writerow([repr(rep.union_volume), repr(rep.sum_volume), repr(rep.mc_stderr)])


def cmd_error_sweep(args, out) -> None:
    sc = _scenario(args.scenario)
    seed, source = _resolve_seed(args.seed)
    if args.steps < 1 or args.sigma_max < 0:
        raise InvalidInputError("need --steps >= 1 and --sigma-max >= 0")
    gains = gain_profile(sc, _comm_powers(sc).powers)
    panel = sc.riss[0]
    if any((r.nx, r.ny) != (panel.nx, panel.ny) for r in sc.riss):
        raise InvalidInputError("error sweep needs identical panel sizes")
    sigmas = np.linspace(0.0, args.sigma_max, args.steps)
    rows = error_sweep(gains, panel.nx, panel.ny, sigmas, sc.rf.noise_power,
                       args.samples, seed, args.workers)
    out.write(f"# riss-sim {__version__} error-sweep scenario={scenario_hash(sc)} "
              f"seed={seed} seed_source={source} samples={args.samples}\n")
    w = _writer(out)
    w.writerow(["sigma_rad", "E_closed_w", "E_mc_w", "E_mc_stderr", "ese_bound", "ese_mc",
                "ese_stderr"])
    for r in rows:
        w.writerow([repr(float(v)) for v in (r.sigma, r.e_closed, r.e_mc, r.e_mc_stderr,
                                      r.ese_bound, r.ese_mc, r.ese_stderr)])


def cmd_figure(args, out) -> None:
    sc = _scenario(args.scenario)
    seed, source = _resolve_seed(args.seed)
    spec = default_spec(args.command, sc, seed=seed, samples=args.samples,
                        workers=args.workers, seed_source=source)
    text = run(spec).to_csv()
    if args.out:
        Path(args.out).write_text(text)
    else:
        out.write(text)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="riss-sim", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("place", help="orthogonal RISS x-positions")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--rr", type=float, required=True)
    p.add_argument("--antennas", type=int, required=True)
    p.add_argument("--slots", type=int, default=None, help="grid size L (default M/2 - 1)")
    p.set_defaults(func=cmd_place)

    p = sub.add_parser("allocate", help="per-RISS transmit powers")
    p.add_argument("--mode", choices=["sensing", "comm"], required=True)
    p.add_argument("--scenario")
    p.set_defaults(func=cmd_allocate)

    p = sub.add_parser("sense-range", help="detectable radii and coverage volumes")
    p.add_argument("--scenario")
    p.add_argument("--gamma-db", type=float, default=None)
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sense_range)

    p = sub.add_parser("error-sweep", help="energy and ESE against sensing error")
    p.add_argument("--scenario")
    p.add_argument("--sigma-max", type=float, required=True)
    p.add_argument("--steps", type=int, required=True)
    p.add_argument("--samples", type=int, default=100_000)
    p.add_argument("--seed", type=int, default=None)
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_error_sweep)

    for name in ("fig3", "fig4", "fig5"):
        p = sub.add_parser(name, help=f"reproduce the {name} sweep as CSV")
        p.add_argument("--scenario")
        p.add_argument("--out")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--samples", type=int, default=None)
        p.add_argument("--workers", type=int, default=1)
        p.set_defaults(func=cmd_figure)
    return parser


def main(argv: list[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    args = build_parser().parse_args(argv)
    try:
        args.func(args, out)
    except InfeasiblePlacementError as exc:
        print(f"riss-sim: infeasible placement: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except InvalidInputError as exc:
        print(f"riss-sim: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_INVALID
    return 0


if __name__ == "__main__":
    sys.exit(main())
