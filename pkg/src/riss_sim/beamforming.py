"""Closed-form decoupled beamforming and received-signal evaluation.

With leakage removed by placement, each RISS path factors into a panel part
``h^T Theta a_G`` and a BS part ``beta^T w``. Co-phasing the panel
(``Theta = conj(h o a_G)``) gives ``N``; a conjugate matched filter gives
``sqrt(eta M)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import RissLink, SteeringVector, make_channels
from .errors import InvalidInputError
from .scene import Scenario


@dataclass(frozen=True)
class PhaseConfig:
    """Per-RISS reflection phases, path-phase compensation and BS precoders."""

    thetas: tuple[SteeringVector, ...]
    path_phases: tuple[float, ...]
    precoders: tuple[np.ndarray, ...]
    powers: tuple[float, ...]
    compensated: bool = True

    def __post_init__(self):
        for t in self.thetas:
            for f in t.factors:
                if not np.allclose(np.abs(f), 1.0, atol=1e-12):
                    raise InvalidInputError("reflection phases must be unit modulus")
        if any(p < 0 for p in self.powers):
            raise InvalidInputError("powers must be non-negative")


def optimal_theta(h: SteeringVector, g_left: SteeringVector) -> SteeringVector:
    """Diagonal of ``Theta = diag(conj(h o a_G))``, kept factored."""
    return h.hadamard(g_left).conj()


def optimal_precoder(beta: SteeringVector, eta: float) -> np.ndarray:
    """Matched filter ``sqrt(eta) conj(beta) / ||beta||`` with ``||w||^2 = eta``."""
    if eta < 0:
        raise InvalidInputError(f"power must be non-negative, got {eta}")
    b = beta.dense()
    return math.sqrt(eta) * np.conj(b) / np.linalg.norm(b)


def panel_gain(h: SteeringVector, theta: SteeringVector, g_left: SteeringVector) -> complex:
    """``h^T diag(theta) a_G`` evaluated factor by factor."""
    return h.hadamard(theta).dot(g_left)


def bilinear_gain(link: RissLink, theta: SteeringVector, w: np.ndarray) -> complex:
    """``h^T Theta G w`` without pathloss (``G`` taken as the bare ``a_G beta^T``)."""
    return panel_gain(link.h, theta, link.g.left) * complex(link.g.right.dense() @ w)


def path_phase(scenario: Scenario, k: int, links: Sequence[RissLink] | None = None) -> float:
    """Propagation phase ``2 pi (d_B2R + d_R2U) / lambda`` of RISS ``k``, wrapped to [0, 2 pi)."""
    link = links[k] if links is not None else make_channels(scenario)[k]
    cycles = (link.d_b2r + link.d_r2u) / scenario.rf.wavelength
    return 2.0 * math.pi * (cycles - math.floor(cycles))


def effective_gain(scenario: Scenario, k: int, eta: float) -> float:
    """Noiseless amplitude ``rho_B2R rho_R2U N sqrt(M) sqrt(eta)`` delivered through RISS ``k``."""
    if eta < 0:
        raise InvalidInputError(f"power must be non-negative, got {eta}")
    riss = scenario.riss[k]
    link = make_channels(scenario)[k]
    return (link.rho_b2r * link.rho_r2u * riss.n_elements
            * math.sqrt(scenario.bs.antennas) * math.sqrt(eta))


def path_coefficients(scenario: Scenario,
                      links: Sequence[RissLink] | None = None) -> np.ndarray:
    """Per-RISS amplitude per unit root-power, ``c_k = rho_B2R rho_R2U N sqrt(M)``."""
    links = list(links) if links is not None else make_channels(scenario)
    sqrt_m = math.sqrt(scenario.bs.antennas)
    return np.array([l.rho_b2r * l.rho_r2u * r.n_elements * sqrt_m
                     for l, r in zip(links, scenario.riss)])


def configure(scenario: Scenario, powers: Sequence[float], *, compensate: bool = True,
              links: Sequence[RissLink] | None = None) -> PhaseConfig:
    """Install optimal phases and precoders for the given per-RISS powers."""
    if len(powers) != scenario.n_riss:
        raise InvalidInputError(f"expected {scenario.n_riss} powers, got {len(powers)}")
    links = list(links) if links is not None else make_channels(scenario)
    return PhaseConfig(
        thetas=tuple(optimal_theta(l.h, l.g.left) for l in links),
        path_phases=tuple(path_phase(scenario, k, links) for k in range(len(links))),
        precoders=tuple(optimal_precoder(l.g.right, float(p)) for l, p in zip(links, powers)),
        powers=tuple(float(p) for p in powers),
        compensated=compensate,
    )


def received_amplitude(scenario: Scenario, config: PhaseConfig,
                       links: Sequence[RissLink] | None = None) -> complex:
    """Noiseless MU sample for a common unit symbol on every beam, leakage terms included.

    Each path carries its propagation phase ``exp(-i dphi_k)``; a compensated
    configuration multiplies ``Theta_k`` by ``exp(i dphi_k)``.
    """
    links = list(links) if links is not None else make_channels(scenario)
    w_sum = np.sum(config.precoders, axis=0)
    y = 0j
    for k, link in enumerate(links):
        rot = np.exp(-1j * config.path_phases[k])
        if config.compensated:
            rot *= np.exp(1j * config.path_phases[k])
        y += link.rho_b2r * link.rho_r2u * bilinear_gain(link, config.thetas[k], w_sum) * rot
    return complex(y)


def cross_term(links: Sequence[RissLink], config: PhaseConfig, k: int, i: int) -> complex:
    """Leakage ``h_k^T Theta_k G_k w_i`` of beam ``i`` through RISS ``k`` (no pathloss)."""
    return bilinear_gain(links[k], config.thetas[k], config.precoders[i])
