"""Power allocation across RISSs for the sensing and communication schemes.

Both programs have exact KKT solutions, so no interior-point solver is used.
:func:`oracle_grid_search` enumerates the budget simplex and is kept as an
independent check of the closed forms.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .errors import InvalidInputError, OracleInfeasibleError

Mode = Literal["sensing", "communication"]


@dataclass(frozen=True)
class PowerAllocation:
    powers: np.ndarray
    objective: float
    mode: Mode

    @property
    def shares(self) -> np.ndarray:
        total = self.powers.sum()
        return self.powers / total if total > 0 else np.zeros_like(self.powers)


def _check_budget(total_power: float) -> None:
    if not total_power > 0:
        raise InvalidInputError(f"total power must be positive, got {total_power}")


def sensing_objective(pathloss_b2r: Sequence[float], powers: np.ndarray) -> np.ndarray:
    """Max-min objective ``min_i rho_i^2 eta_i``; ``powers`` may carry leading batch axes."""
    rho2 = np.asarray(pathloss_b2r, float) ** 2
    return np.min(rho2 * powers, axis=-1)


def communication_objective(coeffs: Sequence[float], powers: np.ndarray) -> np.ndarray:
    """Coherent amplitude ``sum_k c_k sqrt(eta_k)``."""
    return np.sum(np.asarray(coeffs, float) * np.sqrt(powers), axis=-1)


def sensing_allocation(pathloss_b2r: Sequence[float], total_power: float) -> PowerAllocation:
    """Equalize the power delivered to every RISS under a tight budget.

    ``eta_i = t / rho_i^2`` with ``t = P / sum_j rho_j^-2``.
    """
    rho = np.asarray(pathloss_b2r, float)
    if rho.size == 0:
        raise InvalidInputError("need at least one RISS")
    if np.any(rho <= 0):
        raise InvalidInputError("pathloss amplitudes must be positive")
    _check_budget(total_power)
    inv = rho ** -2.0
    t = total_power / inv.sum()
    return PowerAllocation(powers=t * inv, objective=float(t), mode="sensing")


def communication_allocation(coeffs: Sequence[float], total_power: float) -> PowerAllocation:
    """Maximize ``sum_k c_k sqrt(eta_k)`` subject to ``sum eta <= P``.

    Stationarity gives ``eta_k proportional to c_k^2``; RISSs with ``c_k = 0`` get nothing.
    """
    c = np.asarray(coeffs, float)
    if c.size == 0 or np.any(c < 0) or not np.any(c > 0):
        raise InvalidInputError("coefficients must be non-negative with at least one positive")
    _check_budget(total_power)
    c2 = c * c
    powers = total_power * c2 / c2.sum()
    return PowerAllocation(powers=powers, objective=math.sqrt(total_power * c2.sum()),
                           mode="communication")


def _simplex_points(k: int, n: int):
    """Yield batches of integer compositions of ``n`` into ``k`` non-negative parts."""
    if k == 1:
        yield np.array([[n]])
        return
    for first in range(n + 1):
        rest = n - first
        if k == 2:
            yield np.array([[first, rest]])
            continue
        grids = np.meshgrid(*([np.arange(rest + 1)] * (k - 2)), indexing="ij")
        free = np.stack([g.ravel() for g in grids], axis=1)
        free = free[free.sum(axis=1) <= rest]
        last = rest - free.sum(axis=1, keepdims=True)
        yield np.hstack([np.full((len(free), 1), first), free, last])


def oracle_grid_search(mode: Mode, coeffs: Sequence[float], total_power: float,
                       resolution: float = 1e-3, max_riss: int = 4) -> PowerAllocation:
    """Best allocation on the budget simplex sampled at ``resolution * P`` steps.

    ``coeffs`` are pathloss amplitudes for ``"sensing"`` and path coefficients
    ``c_k`` for ``"communication"``. Only budget-tight points are enumerated:
    both objectives are non-decreasing in every power.
    """
    coeffs = np.asarray(coeffs, float)
    k = coeffs.size
    if k == 0:
        raise InvalidInputError("need at least one RISS")
    if k > max_riss:
        raise OracleInfeasibleError(f"exhaustive grid limited to {max_riss} RISSs, got {k}")
    _check_budget(total_power)
    n = int(round(1.0 / resolution))
    if n < 1:
        raise InvalidInputError(f"resolution must be in (0, 1], got {resolution}")
    objective = sensing_objective if mode == "sensing" else communication_objective
    best_val, best = -np.inf, None
    for batch in _simplex_points(k, n):
        powers = batch * (total_power / n)
        vals = objective(coeffs, powers)
        i = int(np.argmax(vals))
        if vals[i] > best_val:
            best_val, best = float(vals[i]), powers[i]
    return PowerAllocation(powers=np.asarray(best, float), objective=best_val, mode=mode)
