"""Leakage-free RISS placement on a line parallel to the BS array.

A RISS at ``(x, rr)`` relative to a BS whose ULA lies along x sees departure
sine ``x / sqrt(x^2 + rr^2)``. Slot ``l`` is chosen so that sine equals
``2 l / M`` exactly; any two slots then differ by a multiple of ``2/M`` and
their ULA responses are orthogonal.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InfeasiblePlacementError, InvalidInputError


@dataclass(frozen=True)
class PlacementGrid:
    rr: float
    m: int
    slots: np.ndarray

    @property
    def size(self) -> int:
        return len(self.slots)

    def sines(self) -> np.ndarray:
        return self.slots / np.hypot(self.slots, self.rr)


def orthogonal_grid(L: int, rr: float, m: int) -> PlacementGrid:
    """Slots ``x_l = 2 l rr / sqrt(m^2 - 4 l^2)`` for ``l = 0 .. L-1``."""
    if L < 1:
        raise InvalidInputError(f"grid needs at least one slot, got L={L}")
    if not rr > 0:
        raise InvalidInputError(f"rr must be positive, got {rr}")
    if 2 * L > m:
        raise InfeasiblePlacementError(f"2L = {2 * L} exceeds antenna count {m}")
    l = np.arange(L, dtype=float)
    return PlacementGrid(rr=float(rr), m=int(m), slots=2.0 * l * rr / np.sqrt(m * m - 4.0 * l * l))


def quantize_uniform(n_riss: int, grid: PlacementGrid) -> list[int]:
    """Spread ``n_riss`` targets evenly over ``[0, x_max]`` and snap them to grid slots.

    A target whose nearest slot is taken moves to the nearest free one (ties go to
    the lower slot index). Returns sorted slot indices.
    """
    if n_riss < 1:
        raise InvalidInputError(f"n_riss must be >= 1, got {n_riss}")
    if n_riss > grid.size:
        raise InfeasiblePlacementError(f"{n_riss} RISSs do not fit on {grid.size} slots")
    targets = np.linspace(0.0, grid.slots[-1], n_riss) if n_riss > 1 else np.zeros(1)
    taken: set[int] = set()
    for t in targets:
        for idx in np.argsort(np.abs(grid.slots - t), kind="stable"):
            if int(idx) not in taken:
                taken.add(int(idx))
                break
    return sorted(taken)


def leakage(sine_k: float, sine_i: float, m: int) -> complex:
    """``sum_{n=0}^{m-1} exp(i pi n (sine_k - sine_i))``, i.e. ``beta_k^T conj(beta_i)``."""
    delta = np.pi * (sine_k - sine_i)
    s = np.sin(delta / 2.0)
    if abs(s) < 1e-15:
        # closed form is 0/0 when delta is a multiple of 2 pi
        return complex(np.exp(1j * delta * np.arange(m)).sum())
    return complex(np.exp(0.5j * (m - 1) * delta) * np.sin(m * delta / 2.0) / s)


def placement_positions(n_riss: int, grid: PlacementGrid) -> np.ndarray:
    return grid.slots[quantize_uniform(n_riss, grid)]
