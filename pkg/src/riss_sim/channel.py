"""Steering vectors, rank-one channels and free-space pathloss laws.

UPA responses are kept in Kronecker-factored form ``a_u (x) a_v`` and never
densified on the hot path: for a 25x25 panel every bilinear form reduces to
products of per-axis sums.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

import numpy as np

from .errors import InvalidInputError
from .scene import Scenario, departure_sine, distance, panel_direction_cosines


@dataclass(frozen=True)
class SteeringVector:
    """Unit-modulus array response stored as Kronecker factors.

    A ULA response has one factor, a UPA response two (``u`` axis first).
    """

    factors: tuple[np.ndarray, ...]

    def __len__(self) -> int:
        return int(np.prod([len(f) for f in self.factors]))

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(len(f) for f in self.factors)

    def dense(self) -> np.ndarray:
        return reduce(np.kron, self.factors)

    def conj(self) -> "SteeringVector":
        return SteeringVector(tuple(np.conj(f) for f in self.factors))

    def hadamard(self, other: "SteeringVector") -> "SteeringVector":
        self._check_compatible(other)
        return SteeringVector(tuple(a * b for a, b in zip(self.factors, other.factors)))

    def total(self) -> complex:
        """Sum of all entries of the dense vector."""
        return complex(np.prod([f.sum() for f in self.factors]))

    def dot(self, other: "SteeringVector") -> complex:
        """Unconjugated inner product ``self^T other``."""
        return self.hadamard(other).total()

    def _check_compatible(self, other: "SteeringVector") -> None:
        if self.shape != other.shape:
            raise InvalidInputError(f"dimension mismatch: {self.shape} vs {other.shape}")

    @property
    def ula_u(self) -> np.ndarray:
        return self.factors[0]

    @property
    def ula_v(self) -> np.ndarray:
        return self.factors[1]


@dataclass(frozen=True)
class RankOneChannel:
    """``amplitude * left right^T`` with ``left`` on the panel side, ``right`` on the BS side."""

    left: SteeringVector
    right: SteeringVector
    amplitude: float

    def dense(self) -> np.ndarray:
        return self.amplitude * np.outer(self.left.dense(), self.right.dense())


@dataclass(frozen=True)
class RissLink:
    """Everything the beamformer needs about one RISS."""

    g: RankOneChannel
    h: SteeringVector
    d_b2r: float
    d_r2u: float
    rho_b2r: float
    rho_r2u: float
    bs_sine: float


def ula_steering(phase: float, length: int) -> SteeringVector:
    """``[exp(i m phase)]`` for ``m = 0 .. length-1``."""
    if length < 1:
        raise InvalidInputError(f"array length must be >= 1, got {length}")
    return SteeringVector((np.exp(1j * phase * np.arange(length)),))


def upa_steering(u: float, v: float, nx: int, ny: int) -> SteeringVector:
    """Half-wave UPA response for direction cosines ``u`` (``nx`` axis) and ``v`` (``ny`` axis)."""
    if nx < 1 or ny < 1:
        raise InvalidInputError(f"panel size must be positive, got {nx}x{ny}")
    return SteeringVector((ula_steering(math.pi * u, nx).ula_u,
                           ula_steering(math.pi * v, ny).ula_u))


def pathloss_b2r(d: float, lam: float) -> float:
    """Free-space amplitude ``lambda / (4 pi d)`` for the BS-to-RISS hop."""
    if not d > 0 or not lam > 0:
        raise InvalidInputError(f"distance and wavelength must be positive, got d={d}, lambda={lam}")
    return lam / (4.0 * math.pi * d)


def pathloss_r2u(d: float, lam: float) -> float:
    return pathloss_b2r(d, lam)


def pathloss_u2r(d: float, rcs: float) -> float:
    """Echo amplitude ``sqrt(rcs / 4 pi) / d`` of the user scattering back to a RISS."""
    if not d > 0 or not rcs > 0:
        raise InvalidInputError(f"distance and RCS must be positive, got d={d}, rcs={rcs}")
    return math.sqrt(rcs / (4.0 * math.pi)) / d


def make_link(scenario: Scenario, k: int) -> RissLink:
    riss = scenario.riss[k]
    bs = scenario.bs
    lam = scenario.rf.wavelength
    s = departure_sine(bs, riss.position)
    u_g, v_g = panel_direction_cosines(riss, bs.position)
    u_h, v_h = panel_direction_cosines(riss, scenario.user_position)
    d_b2r = distance(bs.position, riss.position)
    d_r2u = distance(riss.position, scenario.user_position)
    rho_b2r = pathloss_b2r(d_b2r, lam)
    g = RankOneChannel(
        left=upa_steering(u_g, v_g, riss.nx, riss.ny),
        right=ula_steering(math.pi * s, bs.antennas),
        amplitude=rho_b2r,
    )
    return RissLink(
        g=g,
        h=upa_steering(u_h, v_h, riss.nx, riss.ny),
        d_b2r=d_b2r,
        d_r2u=d_r2u,
        rho_b2r=rho_b2r,
        rho_r2u=pathloss_r2u(d_r2u, lam),
        bs_sine=s,
    )


def make_channels(scenario: Scenario) -> list[RissLink]:
    """Build ``G_k``, ``h_k`` and hop distances for every RISS in the scenario."""
    return [make_link(scenario, k) for k in range(scenario.n_riss)]
