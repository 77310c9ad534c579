"""Deterministic parameter sweeps behind the three evaluation figures.

Every sweep takes a base :class:`~riss_sim.scene.Scenario` and replaces its RISS
list by a leakage-free deployment of the requested size: panels are cloned from
``riss[0]``, kept at its elevation and at its y-offset ``rr`` from the BS.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Literal

import numpy as np

from . import __version__
from .allocation import communication_allocation, sensing_allocation
from .beamforming import configure, path_coefficients, received_amplitude
from .channel import make_channels
from .error_analysis import error_sweep, gain_profile
from .placement import orthogonal_grid, placement_positions
from .scene import Scenario, default_scenario, scenario_hash
from .sensing_range import coverage

Kind = Literal["fig3", "fig4", "fig5"]


@dataclass(frozen=True)
class ExperimentSpec:
    kind: Kind
    scenario: Scenario
    n_riss: tuple[int, ...]
    powers: tuple[float, ...]
    grid_slots: int
    samples: int
    seed: int = 0
    x_range: tuple[float, float, int] = (0.0, 150.0, 151)
    sigmas: tuple[float, ...] = ()
    user_position: tuple[float, float, float] | None = None
    workers: int = 1
    seed_source: str = "default"

    def __post_init__(self):
        if not self.n_riss or not self.powers:
            raise ValueError("sweep lists must be non-empty")
        if self.kind == "fig5" and not self.sigmas:
            raise ValueError("fig5 needs a sigma list")
        lo, hi, n = self.x_range
        if hi < lo or n < 1:
            raise ValueError(f"bad x range {self.x_range}")


def default_spec(kind: Kind, scenario: Scenario | None = None, *, seed: int = 0,
                 samples: int | None = None, workers: int = 1,
                 seed_source: str = "default") -> ExperimentSpec:
    """Sweep grids used for the reference figures.

    fig3 uses a 20-slot grid (deployments within ~37 m of the BS axis) and the
    power set {0.1, 1, 10} mW; neither is fixed by the model, see the CSV header.
    """
    scenario = scenario or default_scenario()
    if kind == "fig3":
        return ExperimentSpec("fig3", scenario, tuple(range(1, 21)), (1e-4, 1e-3, 1e-2),
                              grid_slots=20, samples=samples or 200_000, seed=seed,
                              workers=workers, seed_source=seed_source)
    if kind == "fig4":
        return ExperimentSpec("fig4", scenario, (1, 2, 3, 4, 5, 6), (scenario.rf.total_power,),
                              grid_slots=31, samples=samples or 0, seed=seed,
                              workers=workers, seed_source=seed_source)
    if kind == "fig5":
        sigmas = tuple(float(s) for s in np.linspace(0.0, 0.05 * math.pi, 11))
        return ExperimentSpec("fig5", scenario, (4, 6, 8), (1e-3,), grid_slots=31,
                              samples=samples or 100_000, seed=seed, sigmas=sigmas,
                              user_position=(50.0, 10.0, 0.0), workers=workers,
                              seed_source=seed_source)
    raise ValueError(f"unknown experiment {kind!r}")


def deploy(scenario: Scenario, n_riss: int, grid_slots: int) -> Scenario:
    """Place ``n_riss`` panels on the uniform-then-snapped orthogonal grid."""
    bs = scenario.bs.position
    ref = scenario.riss[0].position
    rr = ref.y - bs.y
    grid = orthogonal_grid(grid_slots, rr, scenario.bs.antennas)
    xs = placement_positions(n_riss, grid)
    return scenario.with_riss_positions([(bs.x + x, bs.y + rr, ref.z) for x in xs])


@dataclass
class ExperimentResult:
    kind: str
    header: list[str]
    rows: list[tuple] = field(default_factory=list)
    comments: list[str] = field(default_factory=list)

    def column(self, name: str) -> np.ndarray:
        i = self.header.index(name)
        return np.array([r[i] for r in self.rows])

    def to_csv(self) -> str:
        buf = io.StringIO()
        for line in self.comments:
            buf.write(f"# {line}\n")
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([repr(float(v)) if isinstance(v, float) else v for v in row])
        return buf.getvalue()


def _provenance(spec: ExperimentSpec) -> list[str]:
    return [f"riss-sim {__version__} {spec.kind} scenario={scenario_hash(spec.scenario)} "
            f"seed={spec.seed} seed_source={spec.seed_source} samples={spec.samples} "
            f"grid_slots={spec.grid_slots}"]


def run_fig3(spec: ExperimentSpec) -> ExperimentResult:
    """Coverage volume against deployment size and total power (sensing scheme)."""
    res = ExperimentResult("fig3", ["n_riss", "power_w", "radius_m", "A_union_m3",
                                    "A_sum_m3", "A_union_stderr_m3"])
    res.comments = _provenance(spec) + [
        f"assumed defaults: powers_w={list(spec.powers)} "
        f"snr_threshold_db={10 * math.log10(spec.scenario.rf.snr_threshold):.6g}"]
    for power in spec.powers:
        for n in spec.n_riss:
            sc = deploy(spec.scenario, n, spec.grid_slots).with_power(power)
            alloc = sensing_allocation([l.rho_b2r for l in make_channels(sc)], power)
            rep = coverage(sc, alloc.powers, samples=spec.samples, seed=spec.seed,
                           workers=spec.workers)
            res.rows.append((n, float(power), float(rep.radii.min()), rep.union_volume,
                             rep.sum_volume, rep.mc_stderr))
    return res


def fig4_point(scenario: Scenario) -> float:
    """Spectral efficiency at the scenario's user position under the communication scheme."""
    links = make_channels(scenario)
    alloc = communication_allocation(path_coefficients(scenario, links), scenario.rf.total_power)
    y = received_amplitude(scenario, configure(scenario, alloc.powers, links=links), links)
    return math.log2(1.0 + abs(y) ** 2 / scenario.rf.noise_power)


def run_fig4(spec: ExperimentSpec) -> ExperimentResult:
    """Spectral efficiency as the user moves along x (communication scheme)."""
    res = ExperimentResult("fig4", ["n_riss", "power_w", "x_u_m", "spectral_efficiency"])
    res.comments = _provenance(spec)
    u = spec.scenario.user_position
    xs = np.linspace(*spec.x_range)
    for power in spec.powers:
        for n in spec.n_riss:
            sc = deploy(spec.scenario, n, spec.grid_slots).with_power(power)
            for x in xs:
                res.rows.append((n, float(power), float(x), fig4_point(sc.with_user((x, u.y, u.z)))))
    return res


def run_fig5(spec: ExperimentSpec) -> ExperimentResult:
    """Closed-form vs sampled energy and ESE against sensing error."""
    res = ExperimentResult("fig5", ["n_riss", "sigma_rad", "E_closed_w", "E_mc_w",
                                    "E_mc_stderr_w", "ese_bound", "ese_mc", "ese_stderr"])
    res.comments = _provenance(spec)
    base = spec.scenario
    if spec.user_position is not None:
        base = base.with_user(spec.user_position)
    power = spec.powers[0]
    for n in spec.n_riss:
        sc = deploy(base, n, spec.grid_slots).with_power(power)
        alloc = communication_allocation(path_coefficients(sc), power)
        gains = gain_profile(sc, alloc.powers)
        panel = sc.riss[0]
        for row in error_sweep(gains, panel.nx, panel.ny, spec.sigmas, sc.rf.noise_power,
                               spec.samples, spec.seed, spec.workers):
            res.rows.append((n, row.sigma, row.e_closed, row.e_mc, row.e_mc_stderr,
                             row.ese_bound, row.ese_mc, row.ese_stderr))
    return res


def run(spec: ExperimentSpec) -> ExperimentResult:
    return {"fig3": run_fig3, "fig4": run_fig4, "fig5": run_fig5}[spec.kind](spec)
