"""Scenario configuration, geometry and position-to-angle maps.

All lengths are meters, powers watts, frequencies hertz. Angles are handled
as direction cosines along declared array axes; multiplied by pi (half-wave
element spacing) they give the per-element phase increment of a steering
vector.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, NamedTuple, Sequence

import numpy as np

from .errors import ConfigError, DegenerateGeometryError, InvalidInputError

SPEED_OF_LIGHT = 299_792_458.0  # m/s, exact SI value
_AXIS_TOL = 1e-9


class Vec3(NamedTuple):
    x: float
    y: float
    z: float

    def array(self) -> np.ndarray:
        return np.array(self, dtype=float)


def vec3(value: Sequence[float]) -> Vec3:
    if len(value) != 3:
        raise InvalidInputError(f"expected 3 components, got {len(value)}")
    v = Vec3(*(float(c) for c in value))
    if not all(math.isfinite(c) for c in v):
        raise InvalidInputError(f"non-finite component in {tuple(value)}")
    return v


def wavelength(frequency: float) -> float:
    """Free-space wavelength ``c / frequency`` in meters."""
    if not frequency > 0:
        raise InvalidInputError(f"frequency must be positive, got {frequency}")
    return SPEED_OF_LIGHT / frequency


def dbm_to_watt(dbm: float) -> float:
    return 10.0 ** ((dbm - 30.0) / 10.0)


def db_to_linear(db: float) -> float:
    return 10.0 ** (db / 10.0)


def distance(a: Sequence[float], b: Sequence[float]) -> float:
    return float(np.linalg.norm(np.asarray(b, float) - np.asarray(a, float)))


def _unit_direction(origin: Sequence[float], target: Sequence[float]) -> np.ndarray:
    d = np.asarray(target, float) - np.asarray(origin, float)
    norm = np.linalg.norm(d)
    if norm == 0.0:
        raise DegenerateGeometryError(f"target {tuple(target)} coincides with {tuple(origin)}")
    return d / norm


def _is_unit(v: Sequence[float]) -> bool:
    return abs(float(np.linalg.norm(v)) - 1.0) <= _AXIS_TOL


@dataclass(frozen=True)
class BsConfig:
    """Base station with an ``antennas``-element half-wave ULA along ``array_axis``."""

    antennas: int
    position: Vec3
    array_axis: Vec3 = Vec3(1.0, 0.0, 0.0)

    def __post_init__(self):
        if int(self.antennas) != self.antennas or self.antennas < 2:
            raise InvalidInputError(f"BS needs at least 2 antennas, got {self.antennas}")
        if not _is_unit(self.array_axis):
            raise InvalidInputError("BS array_axis must have unit norm")


@dataclass(frozen=True)
class RissConfig:
    """One sensing surface: an ``nx`` x ``ny`` passive UPA spanned by ``axis_u`` / ``axis_v``.

    ``n_active`` is carried as metadata only.
    """

    nx: int
    ny: int
    position: Vec3
    axis_u: Vec3 = Vec3(1.0, 0.0, 0.0)
    axis_v: Vec3 = Vec3(0.0, 0.0, 1.0)
    n_active: int = 0

    def __post_init__(self):
        if self.nx < 1 or self.ny < 1:
            raise InvalidInputError(f"panel size must be positive, got {self.nx}x{self.ny}")
        if self.n_active < 0:
            raise InvalidInputError("n_active must be non-negative")
        if not (_is_unit(self.axis_u) and _is_unit(self.axis_v)):
            raise InvalidInputError("panel axes must have unit norm")
        if abs(float(np.dot(self.axis_u, self.axis_v))) > _AXIS_TOL:
            raise InvalidInputError("panel axes must be orthogonal")

    @property
    def n_elements(self) -> int:
        return self.nx * self.ny


@dataclass(frozen=True)
class RfConfig:
    carrier_frequency: float
    noise_power: float
    rcs: float
    snr_threshold: float
    total_power: float
    element_spacing_ratio: float = field(default=0.5, init=False)

    def __post_init__(self):
        for name in ("carrier_frequency", "noise_power", "rcs", "snr_threshold", "total_power"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise InvalidInputError(f"{name} must be strictly positive, got {value}")

    @classmethod
    def from_db(cls, frequency_hz: float, noise_dbm: float, rcs_m2: float,
                snr_threshold_db: float, total_power_w: float) -> "RfConfig":
        return cls(
            carrier_frequency=float(frequency_hz),
            noise_power=dbm_to_watt(noise_dbm),
            rcs=float(rcs_m2),
            snr_threshold=db_to_linear(snr_threshold_db),
            total_power=float(total_power_w),
        )

    @property
    def wavelength(self) -> float:
        return wavelength(self.carrier_frequency)


@dataclass(frozen=True)
class Scenario:
    bs: BsConfig
    riss: tuple[RissConfig, ...]
    user_position: Vec3
    rf: RfConfig

    def __post_init__(self):
        object.__setattr__(self, "riss", tuple(self.riss))
        if not self.riss:
            raise InvalidInputError("scenario needs at least one RISS")
        positions = [r.position for r in self.riss]
        if len(set(positions)) != len(positions):
            raise InvalidInputError("RISS positions must be pairwise distinct")

    @property
    def n_riss(self) -> int:
        return len(self.riss)

    def with_user(self, position: Sequence[float]) -> "Scenario":
        return replace(self, user_position=vec3(position))

    def with_power(self, total_power: float) -> "Scenario":
        return replace(self, rf=replace(self.rf, total_power=float(total_power)))

    def with_riss_positions(self, positions: Sequence[Sequence[float]]) -> "Scenario":
        """Copy of the scenario with panels cloned from ``riss[0]`` at new positions."""
        template = self.riss[0]
        return replace(self, riss=tuple(replace(template, position=vec3(p)) for p in positions))


def departure_sine(bs: BsConfig, target: Sequence[float]) -> float:
    """Sine of the departure angle from the BS array towards ``target``.

    This is the projection of the unit BS-to-target direction onto the array
    axis; the ULA phase increment is ``pi`` times this value.
    """
    u = _unit_direction(bs.position, target)
    return float(np.clip(np.dot(u, bs.array_axis), -1.0, 1.0))


def panel_direction_cosines(riss: RissConfig, target: Sequence[float]) -> tuple[float, float]:
    """Direction cosines ``(u, v)`` of ``target`` along the panel axes."""
    d = _unit_direction(riss.position, target)
    u = float(np.clip(np.dot(d, riss.axis_u), -1.0, 1.0))
    v = float(np.clip(np.dot(d, riss.axis_v), -1.0, 1.0))
    return u, v


def default_scenario(riss_x: Sequence[float] = (0.0,), rr: float = 50.0,
                     user_position: Sequence[float] = (10.0, 10.0, 0.0),
                     total_power: float = 1e-3, snr_threshold_db: float = 10.0,
                     nx: int = 25, ny: int = 25, antennas: int = 64) -> Scenario:
    """The reference deployment: BS at (0, 0, 15), panels at (x, rr, 15) facing the BS."""
    bs = BsConfig(antennas=antennas, position=Vec3(0.0, 0.0, 15.0))
    riss = tuple(RissConfig(nx=nx, ny=ny, position=Vec3(float(x), rr, 15.0)) for x in riss_x)
    rf = RfConfig.from_db(frequency_hz=3.5e9, noise_dbm=-94.0, rcs_m2=100.0,
                          snr_threshold_db=snr_threshold_db, total_power_w=total_power)
    return Scenario(bs=bs, riss=riss, user_position=vec3(user_position), rf=rf)


# --- JSON interchange -------------------------------------------------------

def _require(obj: dict, key: str, path: str) -> Any:
    if not isinstance(obj, dict):
        raise ConfigError(path, "expected an object")
    if key not in obj:
        raise ConfigError(f"{path}.{key}", "missing required key")
    return obj[key]


def _num(value: Any, path: str, *, positive: bool = False, integer: bool = False,
         minimum: float | None = None) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ConfigError(path, f"expected a number, got {value!r}")
    if not math.isfinite(value):
        raise ConfigError(path, "must be finite")
    if integer and int(value) != value:
        raise ConfigError(path, f"expected an integer, got {value!r}")
    if positive and not value > 0:
        raise ConfigError(path, f"must be strictly positive, got {value!r}")
    if minimum is not None and value < minimum:
        raise ConfigError(path, f"must be >= {minimum}, got {value!r}")
    return int(value) if integer else float(value)


def _vec(value: Any, path: str, *, unit: bool = False) -> Vec3:
    if not isinstance(value, (list, tuple)) or len(value) != 3:
        raise ConfigError(path, "expected a list of 3 numbers")
    v = Vec3(*(_num(c, f"{path}[{i}]") for i, c in enumerate(value)))
    if unit and not _is_unit(v):
        raise ConfigError(path, "must have unit norm")
    return v


def scenario_from_dict(doc: dict) -> Scenario:
    """Build a :class:`Scenario` from its JSON form, validating every invariant.

    Raises:
        ConfigError: on the first violation, tagged with its JSON path.
    """
    bs_doc = _require(doc, "bs", "$")
    bs = BsConfig(
        antennas=_num(_require(bs_doc, "antennas", "$.bs"), "$.bs.antennas", integer=True, minimum=2),
        position=_vec(_require(bs_doc, "position", "$.bs"), "$.bs.position"),
        array_axis=_vec(bs_doc.get("array_axis", [1, 0, 0]), "$.bs.array_axis", unit=True),
    )

    riss_doc = _require(doc, "riss", "$")
    if not isinstance(riss_doc, list) or not riss_doc:
        raise ConfigError("$.riss", "expected a non-empty list")
    panels = []
    seen = set()
    for i, r in enumerate(riss_doc):
        p = f"$.riss[{i}]"
        nx = _num(_require(r, "nx", p), f"{p}.nx", integer=True, minimum=1)
        ny = _num(_require(r, "ny", p), f"{p}.ny", integer=True, minimum=1)
        n_active = _num(r.get("n_active", 0), f"{p}.n_active", integer=True, minimum=0)
        pos = _vec(_require(r, "position", p), f"{p}.position")
        if pos in seen:
            raise ConfigError(f"{p}.position", "duplicates another RISS position")
        seen.add(pos)
        axis_u = _vec(r.get("axis_u", [1, 0, 0]), f"{p}.axis_u", unit=True)
        axis_v = _vec(r.get("axis_v", [0, 0, 1]), f"{p}.axis_v", unit=True)
        if abs(float(np.dot(axis_u, axis_v))) > _AXIS_TOL:
            raise ConfigError(f"{p}.axis_v", "must be orthogonal to axis_u")
        panels.append(RissConfig(nx=nx, ny=ny, position=pos, axis_u=axis_u,
                                 axis_v=axis_v, n_active=n_active))

    user = _vec(_require(doc, "user_position", "$"), "$.user_position")

    rf_doc = _require(doc, "rf", "$")
    rf = RfConfig.from_db(
        frequency_hz=_num(_require(rf_doc, "frequency_hz", "$.rf"), "$.rf.frequency_hz", positive=True),
        noise_dbm=_num(_require(rf_doc, "noise_dbm", "$.rf"), "$.rf.noise_dbm"),
        rcs_m2=_num(_require(rf_doc, "rcs_m2", "$.rf"), "$.rf.rcs_m2", positive=True),
        snr_threshold_db=_num(_require(rf_doc, "snr_threshold_db", "$.rf"), "$.rf.snr_threshold_db"),
        total_power_w=_num(_require(rf_doc, "total_power_w", "$.rf"), "$.rf.total_power_w", positive=True),
    )
    return Scenario(bs=bs, riss=tuple(panels), user_position=user, rf=rf)


def scenario_to_dict(scenario: Scenario) -> dict:
    rf = scenario.rf
    return {
        "bs": {
            "antennas": scenario.bs.antennas,
            "position": list(scenario.bs.position),
            "array_axis": list(scenario.bs.array_axis),
        },
        "riss": [
            {"nx": r.nx, "ny": r.ny, "n_active": r.n_active, "position": list(r.position),
             "axis_u": list(r.axis_u), "axis_v": list(r.axis_v)}
            for r in scenario.riss
        ],
        "user_position": list(scenario.user_position),
        "rf": {
            "frequency_hz": rf.carrier_frequency,
            "noise_dbm": 10.0 * math.log10(rf.noise_power) + 30.0,
            "rcs_m2": rf.rcs,
            "snr_threshold_db": 10.0 * math.log10(rf.snr_threshold),
            "total_power_w": rf.total_power,
        },
    }


def load_scenario(path: str | Path) -> Scenario:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise ConfigError("$", f"cannot read {path}: {exc.strerror}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError("$", f"invalid JSON: {exc}") from exc
    return scenario_from_dict(doc)


def scenario_hash(scenario: Scenario) -> str:
    """Short content hash used in CSV provenance headers."""
    blob = json.dumps(scenario_to_dict(scenario), sort_keys=True).encode()
    return hashlib.sha256(blob).hexdigest()[:16]
