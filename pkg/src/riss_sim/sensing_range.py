"""Detectable radius of each RISS and the volume its coverage hemispheres span."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .channel import pathloss_b2r
from .errors import InvalidInputError
from .sampling import run_chunked
from .scene import Scenario, distance

UNION_STREAM = 1


@dataclass(frozen=True)
class CoverageReport:
    radii: np.ndarray
    union_volume: float
    sum_volume: float
    mc_samples: int
    mc_stderr: float


def detect_radius(scenario: Scenario, k: int, eta: float, gamma: float | None = None) -> float:
    """Largest RISS-to-user distance at which the per-element echo SNR reaches ``gamma``.

    Assumes optimal beamforming, so ``|h^T Theta G w|^2 = eta M N^2``. ``gamma``
    is linear and defaults to the scenario threshold.
    """
    if eta < 0:
        raise InvalidInputError(f"power must be non-negative, got {eta}")
    rf = scenario.rf
    gamma = rf.snr_threshold if gamma is None else gamma
    if not gamma > 0:
        raise InvalidInputError(f"SNR threshold must be positive, got {gamma}")
    riss = scenario.riss[k]
    lam = rf.wavelength
    rho = pathloss_b2r(distance(scenario.bs.position, riss.position), lam)
    beam_power = eta * scenario.bs.antennas * riss.n_elements ** 2
    r4 = lam ** 2 * rf.rcs * rho ** 2 * beam_power / (64.0 * math.pi ** 3 * gamma * rf.noise_power)
    return r4 ** 0.25


def hemisphere_volume(r: float) -> float:
    return 2.0 / 3.0 * math.pi * r ** 3


def sum_volume(radii: Sequence[float]) -> float:
    """Direct sum of hemisphere volumes, ignoring overlap."""
    return math.fsum(hemisphere_volume(r) for r in radii)


def union_volume(centers: Sequence[Sequence[float]], radii: Sequence[float],
                 z_plane: float | None = None, samples: int = 1_000_000, seed: int = 0, *,
                 bounds: tuple[Sequence[float], Sequence[float]] | None = None,
                 clip: bool = True, workers: int = 1) -> tuple[float, float]:
    """Monte Carlo volume of the union of downward half-balls.

    Half-ball ``k`` is ``{p : |p - c_k| <= r_k, p_z <= z_cut}`` with ``z_cut`` equal to
    ``z_plane`` or, if that is None, to the centre's own elevation. Points are drawn
    uniformly in the tight bounding box unless ``bounds = (lo, hi)`` is given.

    With ``clip`` the estimate is projected onto ``[max_k V_k, sum_k V_k]``, the
    interval the exact union volume must lie in (hemispherical cuts only).

    Returns:
        ``(volume, stderr)`` with ``stderr = V_box sqrt(p (1 - p) / samples)``.
    """
    c = np.asarray(centers, float).reshape(-1, 3)
    r = np.asarray(radii, float)
    if len(c) != len(r):
        raise InvalidInputError("centers and radii differ in length")
    if np.any(r < 0):
        raise InvalidInputError("radii must be non-negative")
    keep = r > 0
    c, r = c[keep], r[keep]
    if len(r) == 0:
        return 0.0, 0.0
    z_cut = c[:, 2] if z_plane is None else np.full(len(r), float(z_plane))
    if bounds is None:
        lo = np.array([np.min(c[:, 0] - r), np.min(c[:, 1] - r), np.min(c[:, 2] - r)])
        hi = np.array([np.max(c[:, 0] + r), np.max(c[:, 1] + r),
                       np.max(np.minimum(z_cut, c[:, 2] + r))])
    else:
        lo, hi = np.asarray(bounds[0], float), np.asarray(bounds[1], float)
    extent = hi - lo
    if np.any(extent <= 0):
        return 0.0, 0.0
    box = float(np.prod(extent))
    r2 = r * r

    def kernel(rng: np.random.Generator, size: int) -> np.ndarray:
        p = lo + extent * rng.random((size, 3))
        inside = np.zeros(size, dtype=bool)
        for k in range(len(r)):
            d = p - c[k]
            inside |= (np.einsum("ij,ij->i", d, d) <= r2[k]) & (p[:, 2] <= z_cut[k])
        return np.array([np.count_nonzero(inside)])

    hits = run_chunked(kernel, samples, seed, stream=UNION_STREAM, workers=workers)[0]
    frac = hits / samples
    volume = box * frac
    stderr = box * math.sqrt(frac * (1.0 - frac) / samples)
    if clip and np.allclose(z_cut, c[:, 2]):
        volume = min(max(volume, hemisphere_volume(r.max())), sum_volume(r))
    return volume, stderr


def coverage(scenario: Scenario, powers: Sequence[float], gamma: float | None = None,
             samples: int = 1_000_000, seed: int = 0, workers: int = 1) -> CoverageReport:
    """Radii and coverage volumes for every RISS of ``scenario`` at the given powers."""
    if len(powers) != scenario.n_riss:
        raise InvalidInputError(f"expected {scenario.n_riss} powers, got {len(powers)}")
    radii = np.array([detect_radius(scenario, k, float(p), gamma) for k, p in enumerate(powers)])
    centers = [r.position for r in scenario.riss]
    a_union, stderr = union_volume(centers, radii, samples=samples, seed=seed, workers=workers)
    return CoverageReport(radii=radii, union_volume=a_union, sum_volume=sum_volume(radii),
                          mc_samples=samples, mc_stderr=stderr)
